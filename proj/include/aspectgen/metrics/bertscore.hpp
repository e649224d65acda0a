#ifndef ASPECTGEN_METRICS_BERTSCORE_HPP
#define ASPECTGEN_METRICS_BERTSCORE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "aspectgen/metrics/types.hpp"

namespace aspectgen::metrics {

// Per-token contextual vectors produced by an external encoder. All vectors
// share one dimension and are unit-normalized.
struct TokenEmbeddings {
    std::vector<std::string> tokens;
    std::vector<std::vector<double>> vectors;
};

// Greedy matching over dot products: every token grabs its best counterpart
// on the other side. recall averages over reference tokens with reference
// weights, precision over candidate tokens with candidate weights,
// f = 2PR/(P+R). Weights come from idf when given (tokens missing from the
// map weigh 1.0), else all 1. No baseline rescaling. An empty side scores
// 0/0/0; mismatched dimensions are an error.
ScoreTriple bertscore(const TokenEmbeddings& candidate,
                      const TokenEmbeddings& reference,
                      const std::unordered_map<std::string, double>* idf = nullptr);

// Embedding file: JSONL, one entry per (record, side):
//   {"record_id": int, "side": "candidate"|"reference",
//    "tokens": [...], "vectors": [[...], ...]}
// Vectors are validated and re-normalized on load; a zero vector, a
// tokens/vectors length mismatch, or inconsistent dimensions within an entry
// are errors carrying the line number.
class EmbeddingStore {
public:
    static EmbeddingStore load(const std::string& path);

    // Null when the record/side has no entry.
    const TokenEmbeddings* find(std::uint64_t record_id,
                                const std::string& side) const;

    std::size_t size() const { return entries_.size(); }

private:
    std::map<std::pair<std::uint64_t, std::string>, TokenEmbeddings> entries_;
};

}  // namespace aspectgen::metrics

#endif
