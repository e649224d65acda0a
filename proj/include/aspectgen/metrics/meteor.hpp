#ifndef ASPECTGEN_METRICS_METEOR_HPP
#define ASPECTGEN_METRICS_METEOR_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "aspectgen/metrics/synonyms.hpp"
#include "aspectgen/metrics/types.hpp"

namespace aspectgen::metrics {

enum class MatchStage { Exact, Stem, Synonym };

struct MatchPair {
    std::size_t candidate_index = 0;
    std::size_t reference_index = 0;
    MatchStage stage = MatchStage::Exact;

    bool operator==(const MatchPair&) const = default;
};

struct Alignment {
    std::vector<MatchPair> pairs;     // sorted by candidate_index
    std::size_t chunk_count = 0;
};

// Number of maximal runs of pairs contiguous and increasing in both indices,
// after sorting by candidate index. Pairs are (candidate, reference).
std::size_t chunk_count(
    std::vector<std::pair<std::size_t, std::size_t>> pairs);

// Staged one-to-one token alignment: Exact on surface forms, then Stem on
// still-unmatched tokens, then Synonym. Within each stage, among the
// maximum-cardinality matchings the one giving the fewest chunks over all
// pairs chosen so far wins; remaining ties go to the alignment whose
// (reference_index, candidate_index) pairs sort lexicographically smallest.
// Each stage is solved exactly by branch and bound while at most 12 of its
// candidate tokens have a real choice, and by leftmost-greedy matching
// beyond that.
Alignment meteor_align(const TokenSeq& candidate, const TokenSeq& reference,
                       const SynonymTable& synonyms);

// m = |pairs|; P = m/candidate_len, R = m/reference_len,
// F_mean = 10PR/(R+9P), penalty = 0.5*(chunks/m)^3,
// score = F_mean*(1 - penalty); 0 when nothing matched.
double meteor_score(const Alignment& alignment, std::size_t candidate_len,
                    std::size_t reference_len);

// align + score in one call.
double meteor(const TokenSeq& candidate, const TokenSeq& reference,
              const SynonymTable& synonyms);

}  // namespace aspectgen::metrics

#endif
