#include "aspectgen/metrics/lexical.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "aspectgen/errors.hpp"

namespace aspectgen::metrics {

std::size_t unigram_overlap(const TokenSeq& candidate,
                            const TokenSeq& reference) {
    std::unordered_map<std::string, std::size_t> ref_counts;
    for (const auto& t : reference) ref_counts[t]++;
    std::size_t overlap = 0;
    for (const auto& t : candidate) {
        auto it = ref_counts.find(t);
        if (it != ref_counts.end() && it->second > 0) {
            it->second--;
            overlap++;
        }
    }
    return overlap;
}

ScoreTriple rouge1(const TokenSeq& candidate, const TokenSeq& reference) {
    ScoreTriple s;
    std::size_t overlap = unigram_overlap(candidate, reference);
    if (!candidate.empty())
        s.precision = static_cast<double>(overlap) / candidate.size();
    if (!reference.empty())
        s.recall = static_cast<double>(overlap) / reference.size();
    if (s.precision + s.recall > 0)
        s.f = 2 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

namespace {

// n-grams keyed by tokens joined with an unlikely separator byte.
std::unordered_map<std::string, std::size_t> ngram_counts(const TokenSeq& seq,
                                                          std::size_t n) {
    std::unordered_map<std::string, std::size_t> counts;
    if (seq.size() < n) return counts;
    for (std::size_t i = 0; i + n <= seq.size(); i++) {
        std::string key;
        for (std::size_t k = 0; k < n; k++) {
            if (k) key += '\x1f';
            key += seq[i + k];
        }
        counts[key]++;
    }
    return counts;
}

}  // namespace

double bleu(const TokenSeq& candidate, const TokenSeq& reference, int max_n) {
    if (max_n < 1) throw MetricError("bleu: max_n must be at least 1");
    std::size_t c = candidate.size(), r = reference.size();
    if (c == 0) return 0.0;
    double log_sum = 0.0;
    for (int n = 1; n <= max_n; n++) {
        std::size_t un = static_cast<std::size_t>(n);
        if (c < un) return 0.0;  // no candidate n-grams at this order
        auto ref_counts = ngram_counts(reference, un);
        std::size_t clipped = 0;
        std::size_t total = c - un + 1;
        for (auto& [key, count] : ngram_counts(candidate, un)) {
            auto it = ref_counts.find(key);
            if (it != ref_counts.end()) clipped += std::min(count, it->second);
        }
        if (clipped == 0) return 0.0;
        log_sum += std::log(static_cast<double>(clipped) / total);
    }
    double bp = std::min(1.0, std::exp(1.0 - static_cast<double>(r) / c));
    return bp * std::exp(log_sum / max_n);
}

}  // namespace aspectgen::metrics
