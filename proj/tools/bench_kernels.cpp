// Times the serial reference kernels against their OpenMP counterparts:
// page cleaning (wikitext -> sections) and per-sample metric scoring.

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "aspectgen/metrics/scoring.hpp"
#include "aspectgen/wiki/articles.hpp"
#include "aspectgen/wiki/dump_reader.hpp"

using namespace aspectgen;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    double best = 0.0;
    for (int r = 0; r < reps; r++) {
        auto start = Clock::now();
        fn();
        double ms = std::chrono::duration<double, std::milli>(Clock::now() - start)
                        .count();
        if (r == 0 || ms < best) best = ms;
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-14s serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n",
                name, serial_ms, parallel_ms, serial_ms / parallel_ms);
}

std::vector<wiki::RawPage> load_pages(const std::string& dump, std::size_t n) {
    std::vector<wiki::RawPage> base;
    wiki::DumpReader reader(dump);
    while (auto page = reader.next()) base.push_back(std::move(*page));
    std::vector<wiki::RawPage> pages;
    pages.reserve(n);
    while (pages.size() < n) {
        for (const auto& p : base) {
            if (pages.size() >= n) break;
            wiki::RawPage copy = p;
            copy.page_id = pages.size() + 1;
            pages.push_back(std::move(copy));
        }
    }
    return pages;
}

std::vector<metrics::ScoreInput> synth_samples(std::size_t n) {
    static const char* kVocab[] = {"rules",  "game",   "played", "court",
                                   "racket", "ball",   "net",    "serve",
                                   "point",  "player", "modern", "history"};
    std::mt19937_64 rng(7);
    auto sentence = [&](std::size_t len) {
        std::string s;
        for (std::size_t i = 0; i < len; i++) {
            if (i) s += ' ';
            s += kVocab[rng() % (sizeof kVocab / sizeof *kVocab)];
        }
        return s;
    };
    std::vector<metrics::ScoreInput> out(n);
    for (std::size_t i = 0; i < n; i++) {
        out[i].record_id = i;
        out[i].candidate = sentence(8 + rng() % 24);
        out[i].reference = sentence(8 + rng() % 24);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel benchmark"};
    std::string dump = "fixtures/mini-enwiki.xml";
    std::size_t n_pages = 2000;
    std::size_t n_samples = 2000;
    int reps = 3;
    app.add_option("--dump", dump, "dump file to replicate pages from");
    app.add_option("--pages", n_pages, "pages for the cleaning benchmark");
    app.add_option("--samples", n_samples, "samples for the scoring benchmark");
    app.add_option("--reps", reps, "repetitions (best-of)");
    CLI11_PARSE(app, argc, argv);

    std::cout << "omp max threads: " << omp_get_max_threads() << "\n";

    try {
        auto pages = load_pages(dump, n_pages);
        std::vector<wiki::CleanArticle> serial_out, parallel_out;
        double s = time_ms([&] { serial_out = wiki::extract_articles_serial(pages); },
                           reps);
        double p = time_ms(
            [&] { parallel_out = wiki::extract_articles_parallel(pages); }, reps);
        if (serial_out.size() != parallel_out.size()) {
            std::cerr << "kernel mismatch: cleaning outputs differ\n";
            return 1;
        }
        report("clean-pages", s, p);

        auto samples = synth_samples(n_samples);
        metrics::MetricToggles toggles;  // rouge + bleu + meteor
        metrics::SynonymTable synonyms;
        std::vector<metrics::SampleScores> ser, par;
        s = time_ms(
            [&] {
                ser = metrics::score_samples_serial(samples, toggles, synonyms,
                                                    nullptr);
            },
            reps);
        p = time_ms(
            [&] {
                par = metrics::score_samples_parallel(samples, toggles, synonyms,
                                                      nullptr);
            },
            reps);
        for (std::size_t i = 0; i < ser.size(); i++) {
            if (ser[i].rouge1.f != par[i].rouge1.f || ser[i].bleu != par[i].bleu ||
                ser[i].meteor != par[i].meteor) {
                std::cerr << "kernel mismatch: scoring outputs differ at " << i
                          << "\n";
                return 1;
            }
        }
        report("score-samples", s, p);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
