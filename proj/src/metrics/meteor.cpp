#include "aspectgen/metrics/meteor.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <unordered_map>

#include "aspectgen/metrics/porter.hpp"

namespace aspectgen::metrics {

namespace {

using IndexPair = std::pair<std::size_t, std::size_t>;  // (candidate, reference)

// One stage's matching problem: eligible candidate indices with their
// compatible eligible reference indices.
struct StageProblem {
    std::vector<std::size_t> cands;            // ascending candidate indices
    std::vector<std::vector<std::size_t>> adj; // sorted compatible ref indices
};

// Kuhn's augmenting-path matching, used only to learn the maximum
// cardinality the stage can reach.
std::size_t max_matching_size(const StageProblem& p) {
    std::size_t max_ref = 0;
    for (const auto& a : p.adj)
        for (std::size_t r : a) max_ref = std::max(max_ref, r + 1);
    std::vector<std::ptrdiff_t> ref_owner(max_ref, -1);
    std::vector<char> visited;

    std::function<bool(std::size_t)> try_augment = [&](std::size_t ci) -> bool {
        for (std::size_t r : p.adj[ci]) {
            if (visited[r]) continue;
            visited[r] = 1;
            if (ref_owner[r] < 0 ||
                try_augment(static_cast<std::size_t>(ref_owner[r]))) {
                ref_owner[r] = static_cast<std::ptrdiff_t>(ci);
                return true;
            }
        }
        return false;
    };

    std::size_t matched = 0;
    for (std::size_t ci = 0; ci < p.cands.size(); ci++) {
        visited.assign(max_ref, 0);
        if (try_augment(ci)) matched++;
    }
    return matched;
}

// Sorted (reference, candidate) pairs — the tie-break key: leftmost
// reference index first, then leftmost candidate index.
std::vector<IndexPair> tiebreak_key(const std::vector<IndexPair>& union_pairs) {
    std::vector<IndexPair> key;
    key.reserve(union_pairs.size());
    for (const auto& [c, r] : union_pairs) key.emplace_back(r, c);
    std::sort(key.begin(), key.end());
    return key;
}

struct StageSearch {
    const StageProblem& p;
    const std::vector<IndexPair>& fixed;  // pairs from earlier stages
    std::size_t target;                   // maximum reachable cardinality

    std::vector<char> ref_used;
    std::vector<IndexPair> chosen;

    bool have_best = false;
    std::vector<IndexPair> best_pairs;
    std::size_t best_chunks = 0;
    std::vector<IndexPair> best_key;

    StageSearch(const StageProblem& prob, const std::vector<IndexPair>& fix,
                std::size_t tgt)
        : p(prob), fixed(fix), target(tgt) {
        std::size_t max_ref = 0;
        for (const auto& a : p.adj)
            for (std::size_t r : a) max_ref = std::max(max_ref, r + 1);
        ref_used.assign(max_ref, 0);
    }

    void consider_leaf() {
        if (chosen.size() != target) return;
        std::vector<IndexPair> union_pairs = fixed;
        union_pairs.insert(union_pairs.end(), chosen.begin(), chosen.end());
        std::size_t chunks = chunk_count(union_pairs);
        std::vector<IndexPair> key = tiebreak_key(union_pairs);
        if (!have_best || chunks < best_chunks ||
            (chunks == best_chunks && key < best_key)) {
            have_best = true;
            best_pairs = chosen;
            best_chunks = chunks;
            best_key = std::move(key);
        }
    }

    void dfs(std::size_t idx) {
        if (chosen.size() + (p.cands.size() - idx) < target) return;  // bound
        if (idx == p.cands.size()) {
            consider_leaf();
            return;
        }
        for (std::size_t r : p.adj[idx]) {
            if (ref_used[r]) continue;
            ref_used[r] = 1;
            chosen.emplace_back(p.cands[idx], r);
            dfs(idx + 1);
            chosen.pop_back();
            ref_used[r] = 0;
        }
        dfs(idx + 1);  // leave this candidate unmatched
    }
};

// Candidates with a real choice: several options, or a single option some
// other candidate also wants.
std::size_t ambiguous_count(const StageProblem& p) {
    std::unordered_map<std::size_t, std::size_t> ref_demand;
    for (const auto& a : p.adj)
        for (std::size_t r : a) ref_demand[r]++;
    std::size_t n = 0;
    for (const auto& a : p.adj) {
        if (a.size() >= 2)
            n++;
        else if (a.size() == 1 && ref_demand[a[0]] >= 2)
            n++;
    }
    return n;
}

std::vector<IndexPair> solve_stage(const StageProblem& p,
                                   const std::vector<IndexPair>& fixed) {
    if (p.cands.empty()) return {};
    if (ambiguous_count(p) > 12) {
        // Leftmost-greedy fallback: each candidate takes the smallest
        // compatible unused reference.
        std::size_t max_ref = 0;
        for (const auto& a : p.adj)
            for (std::size_t r : a) max_ref = std::max(max_ref, r + 1);
        std::vector<char> used(max_ref, 0);
        std::vector<IndexPair> out;
        for (std::size_t i = 0; i < p.cands.size(); i++) {
            for (std::size_t r : p.adj[i]) {
                if (used[r]) continue;
                used[r] = 1;
                out.emplace_back(p.cands[i], r);
                break;
            }
        }
        return out;
    }
    std::size_t target = max_matching_size(p);
    if (target == 0) return {};
    StageSearch search(p, fixed, target);
    search.dfs(0);
    return search.best_pairs;
}

}  // namespace

std::size_t chunk_count(std::vector<IndexPair> pairs) {
    if (pairs.empty()) return 0;
    std::sort(pairs.begin(), pairs.end());
    std::size_t chunks = 1;
    for (std::size_t i = 1; i < pairs.size(); i++) {
        bool contiguous = pairs[i].first == pairs[i - 1].first + 1 &&
                          pairs[i].second == pairs[i - 1].second + 1;
        if (!contiguous) chunks++;
    }
    return chunks;
}

Alignment meteor_align(const TokenSeq& candidate, const TokenSeq& reference,
                       const SynonymTable& synonyms) {
    std::vector<char> cand_matched(candidate.size(), 0);
    std::vector<char> ref_matched(reference.size(), 0);

    // Stems are needed by stage 2 only, computed lazily once.
    std::vector<std::string> cand_stems, ref_stems;
    bool stems_ready = false;
    auto ensure_stems = [&] {
        if (stems_ready) return;
        stems_ready = true;
        cand_stems.reserve(candidate.size());
        for (const auto& t : candidate) cand_stems.push_back(porter_stem(t));
        ref_stems.reserve(reference.size());
        for (const auto& t : reference) ref_stems.push_back(porter_stem(t));
    };

    std::vector<IndexPair> fixed;  // union of pairs chosen so far
    Alignment alignment;

    const MatchStage stages[] = {MatchStage::Exact, MatchStage::Stem,
                                 MatchStage::Synonym};
    for (MatchStage stage : stages) {
        if (stage == MatchStage::Synonym && synonyms.empty()) break;
        if (stage == MatchStage::Stem) ensure_stems();

        StageProblem p;
        for (std::size_t i = 0; i < candidate.size(); i++) {
            if (cand_matched[i]) continue;
            std::vector<std::size_t> compat;
            for (std::size_t j = 0; j < reference.size(); j++) {
                if (ref_matched[j]) continue;
                bool ok = false;
                switch (stage) {
                    case MatchStage::Exact:
                        ok = candidate[i] == reference[j];
                        break;
                    case MatchStage::Stem:
                        ok = cand_stems[i] == ref_stems[j];
                        break;
                    case MatchStage::Synonym:
                        ok = synonyms.synonyms(candidate[i], reference[j]);
                        break;
                }
                if (ok) compat.push_back(j);
            }
            if (!compat.empty()) {
                p.cands.push_back(i);
                p.adj.push_back(std::move(compat));
            }
        }

        for (const auto& [c, r] : solve_stage(p, fixed)) {
            cand_matched[c] = 1;
            ref_matched[r] = 1;
            fixed.emplace_back(c, r);
            alignment.pairs.push_back(MatchPair{c, r, stage});
        }
    }

    std::sort(alignment.pairs.begin(), alignment.pairs.end(),
              [](const MatchPair& a, const MatchPair& b) {
                  return a.candidate_index < b.candidate_index;
              });
    alignment.chunk_count = chunk_count(fixed);
    return alignment;
}

double meteor_score(const Alignment& alignment, std::size_t candidate_len,
                    std::size_t reference_len) {
    std::size_t m = alignment.pairs.size();
    if (m == 0 || candidate_len == 0 || reference_len == 0) return 0.0;
    double p = static_cast<double>(m) / candidate_len;
    double r = static_cast<double>(m) / reference_len;
    double f_mean = 10.0 * p * r / (r + 9.0 * p);
    double frag = static_cast<double>(alignment.chunk_count) / m;
    double penalty = 0.5 * frag * frag * frag;
    return f_mean * (1.0 - penalty);
}

double meteor(const TokenSeq& candidate, const TokenSeq& reference,
              const SynonymTable& synonyms) {
    Alignment a = meteor_align(candidate, reference, synonyms);
    return meteor_score(a, candidate.size(), reference.size());
}

}  // namespace aspectgen::metrics
