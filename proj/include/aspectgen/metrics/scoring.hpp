#ifndef ASPECTGEN_METRICS_SCORING_HPP
#define ASPECTGEN_METRICS_SCORING_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "aspectgen/metrics/bertscore.hpp"
#include "aspectgen/metrics/synonyms.hpp"
#include "aspectgen/metrics/types.hpp"

namespace aspectgen::metrics {

struct MetricToggles {
    bool rouge1 = true;
    bool bleu = true;
    bool meteor = true;
    bool bertscore = false;
    int bleu_max_n = 4;
};

// One generated sample next to its reference, ready to score.
struct ScoreInput {
    std::uint64_t record_id = 0;
    std::string candidate;
    std::string reference;
    bool ok = true;  // generation succeeded; failures score 0 but stay counted
};

// Every metric component for one sample. Disabled metrics stay 0.
struct SampleScores {
    std::uint64_t record_id = 0;
    bool ok = true;
    ScoreTriple rouge1;
    double bleu = 0.0;
    double meteor = 0.0;
    ScoreTriple bertscore;
};

SampleScores score_sample(const ScoreInput& input, const MetricToggles& toggles,
                          const SynonymTable& synonyms,
                          const EmbeddingStore* embeddings,
                          const std::unordered_map<std::string, double>* idf = nullptr);

// Reference implementation: plain loop, used to validate the parallel kernel.
std::vector<SampleScores> score_samples_serial(
    const std::vector<ScoreInput>& inputs, const MetricToggles& toggles,
    const SynonymTable& synonyms, const EmbeddingStore* embeddings,
    const std::unordered_map<std::string, double>* idf = nullptr);

// OpenMP kernel; samples are independent, output order matches input order.
std::vector<SampleScores> score_samples_parallel(
    const std::vector<ScoreInput>& inputs, const MetricToggles& toggles,
    const SynonymTable& synonyms, const EmbeddingStore* embeddings,
    const std::unordered_map<std::string, double>* idf = nullptr);

struct CorpusScores {
    double rouge1 = 0.0;
    double bleu = 0.0;
    double meteor = 0.0;
    double bertscore = 0.0;
    std::size_t sample_count = 0;
    std::size_t failed_count = 0;
};

// Unweighted means over all samples; failed ones contribute 0 to the sums
// but still sit in the denominator.
CorpusScores corpus_aggregate(const std::vector<SampleScores>& samples);

// JSONL with one line per sample carrying the enabled metric components.
void write_scores_jsonl(const std::vector<SampleScores>& samples,
                        const MetricToggles& toggles, const std::string& path);

}  // namespace aspectgen::metrics

#endif
