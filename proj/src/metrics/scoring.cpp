#include "aspectgen/metrics/scoring.hpp"

#include <json.hpp>
#include <omp.h>

#include <exception>
#include <fstream>

#include "aspectgen/errors.hpp"
#include "aspectgen/metrics/lexical.hpp"
#include "aspectgen/metrics/meteor.hpp"

using nlohmann::json;

namespace aspectgen::metrics {

SampleScores score_sample(const ScoreInput& input, const MetricToggles& toggles,
                          const SynonymTable& synonyms,
                          const EmbeddingStore* embeddings,
                          const std::unordered_map<std::string, double>* idf) {
    SampleScores s;
    s.record_id = input.record_id;
    s.ok = input.ok;
    if (!input.ok) return s;  // failed generation: all components stay 0

    TokenSeq cand = normalize_tokenize(input.candidate);
    TokenSeq ref = normalize_tokenize(input.reference);
    if (toggles.rouge1) s.rouge1 = rouge1(cand, ref);
    if (toggles.bleu) s.bleu = bleu(cand, ref, toggles.bleu_max_n);
    if (toggles.meteor) s.meteor = meteor(cand, ref, synonyms);
    if (toggles.bertscore) {
        if (!embeddings)
            throw MetricError("bertscore enabled but no embedding store supplied");
        const TokenEmbeddings* c = embeddings->find(input.record_id, "candidate");
        const TokenEmbeddings* r = embeddings->find(input.record_id, "reference");
        if (!c || !r)
            throw MetricError("no embeddings for record " +
                              std::to_string(input.record_id));
        s.bertscore = bertscore(*c, *r, idf);
    }
    return s;
}

std::vector<SampleScores> score_samples_serial(
    const std::vector<ScoreInput>& inputs, const MetricToggles& toggles,
    const SynonymTable& synonyms, const EmbeddingStore* embeddings,
    const std::unordered_map<std::string, double>* idf) {
    std::vector<SampleScores> out;
    out.reserve(inputs.size());
    for (const auto& in : inputs)
        out.push_back(score_sample(in, toggles, synonyms, embeddings, idf));
    return out;
}

std::vector<SampleScores> score_samples_parallel(
    const std::vector<ScoreInput>& inputs, const MetricToggles& toggles,
    const SynonymTable& synonyms, const EmbeddingStore* embeddings,
    const std::unordered_map<std::string, double>* idf) {
    std::vector<SampleScores> out(inputs.size());
    std::exception_ptr first_error;
    // Exceptions cannot cross the parallel region; stash the first one.
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(inputs.size()); i++) {
        try {
            out[i] = score_sample(inputs[i], toggles, synonyms, embeddings, idf);
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

CorpusScores corpus_aggregate(const std::vector<SampleScores>& samples) {
    if (samples.empty())
        throw MetricError("cannot aggregate an empty score list");
    CorpusScores c;
    c.sample_count = samples.size();
    for (const auto& s : samples) {
        if (!s.ok) {
            c.failed_count++;
            continue;
        }
        c.rouge1 += s.rouge1.f;
        c.bleu += s.bleu;
        c.meteor += s.meteor;
        c.bertscore += s.bertscore.f;
    }
    double n = static_cast<double>(c.sample_count);
    c.rouge1 /= n;
    c.bleu /= n;
    c.meteor /= n;
    c.bertscore /= n;
    return c;
}

void write_scores_jsonl(const std::vector<SampleScores>& samples,
                        const MetricToggles& toggles, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    for (const auto& s : samples) {
        json j;
        j["record_id"] = s.record_id;
        j["status"] = s.ok ? "ok" : "failed";
        if (toggles.rouge1) {
            j["rouge1_p"] = s.rouge1.precision;
            j["rouge1_r"] = s.rouge1.recall;
            j["rouge1_f"] = s.rouge1.f;
        }
        if (toggles.bleu) j["bleu"] = s.bleu;
        if (toggles.meteor) j["meteor"] = s.meteor;
        if (toggles.bertscore) {
            j["bertscore_p"] = s.bertscore.precision;
            j["bertscore_r"] = s.bertscore.recall;
            j["bertscore_f"] = s.bertscore.f;
        }
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("failed writing " + path);
}

}  // namespace aspectgen::metrics
