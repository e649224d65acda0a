#ifndef ASPECTGEN_TESTS_METEOR_ORACLE_HPP
#define ASPECTGEN_TESTS_METEOR_ORACLE_HPP

// Exhaustive reference implementation of the staged alignment, independent
// of the production branch-and-bound: per stage it enumerates every
// matching, keeps the maximum-cardinality ones, and picks the one with the
// fewest chunks over the union so far (ties by the lexicographically
// smallest sorted (reference, candidate) index list). Only viable for tiny
// sequences.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "aspectgen/metrics/meteor.hpp"
#include "aspectgen/metrics/porter.hpp"
#include "aspectgen/metrics/synonyms.hpp"

namespace testutil {

using aspectgen::metrics::SynonymTable;
using aspectgen::metrics::TokenSeq;

using IndexPair = std::pair<std::size_t, std::size_t>;  // (candidate, reference)

inline std::size_t oracle_chunks(std::vector<IndexPair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    std::size_t chunks = 0;
    for (std::size_t i = 0; i < pairs.size(); i++) {
        if (i == 0 || pairs[i].first != pairs[i - 1].first + 1 ||
            pairs[i].second != pairs[i - 1].second + 1)
            chunks++;
    }
    return chunks;
}

inline std::vector<IndexPair> oracle_tiebreak_key(std::vector<IndexPair> pairs) {
    // sorted (reference, candidate) list
    std::vector<IndexPair> key;
    key.reserve(pairs.size());
    for (auto [c, r] : pairs) key.emplace_back(r, c);
    std::sort(key.begin(), key.end());
    return key;
}

struct OracleStageResult {
    std::vector<IndexPair> chosen;
    std::size_t chunks = 0;
};

// All matchings of maximum cardinality for the given compatibility matrix,
// explored by straight recursion over candidate indices.
inline void oracle_enumerate(
    const std::vector<std::vector<std::size_t>>& options, std::size_t cand,
    std::vector<bool>& ref_used, std::vector<IndexPair>& current,
    std::vector<std::vector<IndexPair>>& out, std::size_t& best_size) {
    if (cand == options.size()) {
        if (current.size() > best_size) {
            best_size = current.size();
            out.clear();
        }
        if (current.size() == best_size) out.push_back(current);
        return;
    }
    for (std::size_t r : options[cand]) {
        if (ref_used[r]) continue;
        ref_used[r] = true;
        current.emplace_back(cand, r);
        oracle_enumerate(options, cand + 1, ref_used, current, out, best_size);
        current.pop_back();
        ref_used[r] = false;
    }
    oracle_enumerate(options, cand + 1, ref_used, current, out, best_size);
}

inline aspectgen::metrics::Alignment oracle_align(const TokenSeq& candidate,
                                                  const TokenSeq& reference,
                                                  const SynonymTable& synonyms) {
    using aspectgen::metrics::MatchStage;
    using aspectgen::metrics::porter_stem;

    std::vector<bool> cand_used(candidate.size(), false);
    std::vector<bool> ref_used(reference.size(), false);
    std::vector<IndexPair> fixed;
    std::vector<std::pair<IndexPair, MatchStage>> labelled;

    auto compatible = [&](MatchStage stage, std::size_t c, std::size_t r) {
        switch (stage) {
            case MatchStage::Exact:
                return candidate[c] == reference[r];
            case MatchStage::Stem:
                return porter_stem(candidate[c]) == porter_stem(reference[r]);
            case MatchStage::Synonym:
                return synonyms.synonyms(candidate[c], reference[r]);
        }
        return false;
    };

    for (MatchStage stage :
         {MatchStage::Exact, MatchStage::Stem, MatchStage::Synonym}) {
        if (stage == MatchStage::Synonym && synonyms.empty()) continue;

        // Map stage-local candidate slots to free global indices.
        std::vector<std::size_t> cand_ids, ref_ids;
        for (std::size_t c = 0; c < candidate.size(); c++)
            if (!cand_used[c]) cand_ids.push_back(c);
        for (std::size_t r = 0; r < reference.size(); r++)
            if (!ref_used[r]) ref_ids.push_back(r);

        std::vector<std::vector<std::size_t>> options(cand_ids.size());
        for (std::size_t i = 0; i < cand_ids.size(); i++)
            for (std::size_t j = 0; j < ref_ids.size(); j++)
                if (compatible(stage, cand_ids[i], ref_ids[j]))
                    options[i].push_back(j);

        std::vector<std::vector<IndexPair>> maximal;
        std::vector<bool> used(ref_ids.size(), false);
        std::vector<IndexPair> current;
        std::size_t best_size = 0;
        oracle_enumerate(options, 0, used, current, maximal, best_size);

        std::optional<OracleStageResult> best;
        std::vector<IndexPair> best_key;
        for (const auto& matching : maximal) {
            std::vector<IndexPair> union_pairs = fixed;
            std::vector<IndexPair> global;
            for (auto [ci, rj] : matching)
                global.emplace_back(cand_ids[ci], ref_ids[rj]);
            union_pairs.insert(union_pairs.end(), global.begin(), global.end());
            std::size_t chunks = oracle_chunks(union_pairs);
            auto key = oracle_tiebreak_key(union_pairs);
            if (!best || chunks < best->chunks ||
                (chunks == best->chunks && key < best_key)) {
                best = OracleStageResult{global, chunks};
                best_key = key;
            }
        }
        if (best) {
            for (auto [c, r] : best->chosen) {
                cand_used[c] = true;
                ref_used[r] = true;
                fixed.emplace_back(c, r);
                labelled.push_back({{c, r}, stage});
            }
        }
    }

    aspectgen::metrics::Alignment alignment;
    std::sort(labelled.begin(), labelled.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [pair, stage] : labelled) {
        aspectgen::metrics::MatchPair mp;
        mp.candidate_index = pair.first;
        mp.reference_index = pair.second;
        mp.stage = stage;
        alignment.pairs.push_back(mp);
    }
    alignment.chunk_count = oracle_chunks(fixed);
    return alignment;
}

}  // namespace testutil

#endif
