#ifndef ASPECTGEN_METRICS_LEXICAL_HPP
#define ASPECTGEN_METRICS_LEXICAL_HPP

#include <cstddef>

#include "aspectgen/metrics/types.hpp"

namespace aspectgen::metrics {

// Unigram multiset overlap: sum over types of min(candidate count,
// reference count). The building block of ROUGE-1.
std::size_t unigram_overlap(const TokenSeq& candidate, const TokenSeq& reference);

// ROUGE-1: precision = overlap/|candidate|, recall = overlap/|reference|,
// f = 2PR/(P+R); each term 0 when its denominator is 0.
ScoreTriple rouge1(const TokenSeq& candidate, const TokenSeq& reference);

// BLEU with clipped n-gram precisions for n = 1..max_n, geometric mean,
// brevity penalty min(1, exp(1 - r/c)), no smoothing: any zero precision
// (including n-grams longer than the candidate) gives 0.
double bleu(const TokenSeq& candidate, const TokenSeq& reference, int max_n = 4);

}  // namespace aspectgen::metrics

#endif
