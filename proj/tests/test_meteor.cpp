#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "aspectgen/errors.hpp"
#include "aspectgen/metrics/meteor.hpp"
#include "aspectgen/metrics/synonyms.hpp"
#include "helpers.hpp"
#include "meteor_oracle.hpp"

using namespace aspectgen;
using namespace aspectgen::metrics;

namespace {

SynonymTable fixture_synonyms() {
    return SynonymTable::load("fixtures/synonyms.tsv");
}

// Vocabulary engineered so random pairs hit all three stages: exact ties,
// shared stems, fixture synonyms.
const std::vector<std::string>& aligner_vocab() {
    static const std::vector<std::string> vocab = {
        "cat",  "cats",  "run",  "running", "runs", "fast",
        "quick", "rapid", "big",  "large",   "the",  "a"};
    return vocab;
}

TokenSeq random_seq(std::mt19937_64& rng, std::size_t max_len) {
    const auto& vocab = aligner_vocab();
    TokenSeq seq;
    std::size_t len = rng() % (max_len + 1);
    for (std::size_t i = 0; i < len; i++) seq.push_back(vocab[rng() % vocab.size()]);
    return seq;
}

}  // namespace

TEST_CASE("the synonym table honors group intersections") {
    SynonymTable t = fixture_synonyms();
    CHECK(t.size() == 12);
    CHECK(!t.empty());

    CHECK(t.synonyms("fast", "quick"));
    CHECK(t.synonyms("quick", "fast"));  // symmetric
    CHECK(t.synonyms("fast", "rapid"));
    CHECK(t.synonyms("happy", "glad"));
    CHECK(t.synonyms("cab", "taxi"));
    CHECK(!t.synonyms("fast", "glad"));  // different groups
    CHECK(t.synonyms("fast", "fast"));   // trivially intersects itself
    CHECK(!t.synonyms("unknown", "fast"));
    CHECK(!t.synonyms("unknown", "stranger"));

    // big sits in groups 14 and 15; large only in 14, great only in 15.
    CHECK(t.synonyms("big", "large"));
    CHECK(t.synonyms("big", "great"));
    CHECK(!t.synonyms("large", "great"));
}

TEST_CASE("the loader accumulates groups and skips comments") {
    testutil::TempDir tmp;
    std::string path = tmp.file("syn.tsv");
    testutil::write_file(path,
                         "# comment line\n"
                         "\n"
                         "alpha\t1\n"
                         "beta\t1,2\n"
                         "alpha\t3\n"
                         "gamma\t2\n");
    SynonymTable t = SynonymTable::load(path);
    CHECK(t.size() == 3);
    CHECK(t.synonyms("alpha", "beta"));   // share group 1
    CHECK(t.synonyms("beta", "gamma"));   // share group 2
    CHECK(!t.synonyms("alpha", "gamma")); // {1,3} vs {2}
}

TEST_CASE("the loader rejects malformed lines") {
    testutil::TempDir tmp;
    std::string path = tmp.file("bad.tsv");

    SUBCASE("missing tab") {
        testutil::write_file(path, "alpha 1\n");
        CHECK_THROWS_AS(SynonymTable::load(path), Error);
    }
    SUBCASE("non-numeric group") {
        testutil::write_file(path, "alpha\tone\n");
        CHECK_THROWS_AS(SynonymTable::load(path), Error);
    }
    SUBCASE("empty token") {
        testutil::write_file(path, "\t1\n");
        CHECK_THROWS_AS(SynonymTable::load(path), Error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(SynonymTable::load(tmp.file("nope.tsv")), IoError);
    }
}

TEST_CASE("chunk counting groups contiguous monotone runs") {
    CHECK(chunk_count({}) == 0);
    CHECK(chunk_count({{0, 0}}) == 1);
    CHECK(chunk_count({{0, 0}, {1, 1}, {2, 2}}) == 1);
    CHECK(chunk_count({{0, 1}, {1, 0}}) == 2);          // crossed
    CHECK(chunk_count({{0, 0}, {2, 2}}) == 2);          // gap in candidate
    CHECK(chunk_count({{0, 0}, {1, 2}}) == 2);          // gap in reference
    CHECK(chunk_count({{2, 2}, {0, 0}, {1, 1}}) == 1);  // order-insensitive
    CHECK(chunk_count({{0, 3}, {1, 4}, {3, 0}, {4, 1}}) == 2);
}

TEST_CASE("identical sequences align exactly along the diagonal") {
    TokenSeq x = {"the", "cat", "sat"};
    Alignment a = meteor_align(x, x, SynonymTable{});
    REQUIRE(a.pairs.size() == 3);
    for (std::size_t i = 0; i < 3; i++) {
        CHECK(a.pairs[i].candidate_index == i);
        CHECK(a.pairs[i].reference_index == i);
        CHECK(a.pairs[i].stage == MatchStage::Exact);
    }
    CHECK(a.chunk_count == 1);
}

TEST_CASE("cats running aligns to cat runs through stems") {
    Alignment a =
        meteor_align({"cats", "running"}, {"cat", "runs"}, SynonymTable{});
    REQUIRE(a.pairs.size() == 2);
    CHECK(a.pairs[0].stage == MatchStage::Stem);
    CHECK(a.pairs[1].stage == MatchStage::Stem);
    CHECK(a.pairs[0].candidate_index == 0);
    CHECK(a.pairs[0].reference_index == 0);
    CHECK(a.pairs[1].candidate_index == 1);
    CHECK(a.pairs[1].reference_index == 1);
    CHECK(a.chunk_count == 1);
}

TEST_CASE("crossed exact pairs cost two chunks") {
    Alignment a = meteor_align({"b", "a"}, {"a", "b"}, SynonymTable{});
    REQUIRE(a.pairs.size() == 2);
    CHECK(a.pairs[0].stage == MatchStage::Exact);
    CHECK(a.chunk_count == 2);
}

TEST_CASE("exact matches take precedence over stem and synonym matches") {
    // candidate "run" could stem-match "running", but the exact copy wins.
    Alignment a = meteor_align({"run"}, {"running", "run"}, SynonymTable{});
    REQUIRE(a.pairs.size() == 1);
    CHECK(a.pairs[0].stage == MatchStage::Exact);
    CHECK(a.pairs[0].reference_index == 1);

    // Synonym only fires when surface and stem both fail.
    SynonymTable syn = fixture_synonyms();
    Alignment b = meteor_align({"fast"}, {"quick"}, syn);
    REQUIRE(b.pairs.size() == 1);
    CHECK(b.pairs[0].stage == MatchStage::Synonym);
}

TEST_CASE("chunk minimization prefers the straight diagonal") {
    // Both "a b a" orderings admit 2-pair matchings; the diagonal one has one
    // chunk and must win.
    Alignment a = meteor_align({"a", "b"}, {"a", "b", "a"}, SynonymTable{});
    REQUIRE(a.pairs.size() == 2);
    CHECK(a.pairs[0].candidate_index == 0);
    CHECK(a.pairs[0].reference_index == 0);
    CHECK(a.pairs[1].candidate_index == 1);
    CHECK(a.pairs[1].reference_index == 1);
    CHECK(a.chunk_count == 1);
}

TEST_CASE("alignment is one-to-one on random pairs") {
    std::mt19937_64 rng(5150);
    SynonymTable syn = fixture_synonyms();
    for (int iter = 0; iter < 500; iter++) {
        TokenSeq cand = random_seq(rng, 8);
        TokenSeq ref = random_seq(rng, 8);
        Alignment a = meteor_align(cand, ref, syn);
        std::vector<bool> cu(cand.size(), false), ru(ref.size(), false);
        for (const auto& p : a.pairs) {
            REQUIRE(p.candidate_index < cand.size());
            REQUIRE(p.reference_index < ref.size());
            CHECK(!cu[p.candidate_index]);
            CHECK(!ru[p.reference_index]);
            cu[p.candidate_index] = true;
            ru[p.reference_index] = true;
        }

        std::vector<std::pair<std::size_t, std::size_t>> raw;
        for (const auto& p : a.pairs)
            raw.emplace_back(p.candidate_index, p.reference_index);
        CHECK(a.chunk_count == chunk_count(raw));
    }
}

TEST_CASE("the aligner matches the exhaustive oracle on short sequences") {
    std::mt19937_64 rng(777);
    SynonymTable syn = fixture_synonyms();
    for (int iter = 0; iter < 120; iter++) {
        TokenSeq cand = random_seq(rng, 6);
        TokenSeq ref = random_seq(rng, 6);
        CAPTURE(iter);
        Alignment got = meteor_align(cand, ref, syn);
        Alignment want = testutil::oracle_align(cand, ref, syn);
        REQUIRE(got.pairs.size() == want.pairs.size());
        CHECK(got.chunk_count == want.chunk_count);
        for (std::size_t i = 0; i < got.pairs.size(); i++) {
            CHECK(got.pairs[i] == want.pairs[i]);
        }
    }
}

TEST_CASE("score formula: identity over six tokens") {
    TokenSeq x = {"t1", "t2", "t3", "t4", "t5", "t6"};
    double score = meteor(x, x, SynonymTable{});
    CHECK(score == doctest::Approx(1.0 - 0.5 / 216.0).epsilon(1e-9));
    CHECK(score == doctest::Approx(0.99769).epsilon(1e-5));
}

TEST_CASE("score formula: the cats-running pair") {
    double score = meteor({"cats", "running"}, {"cat", "runs"}, SynonymTable{});
    CHECK(score == doctest::Approx(0.9375).epsilon(1e-9));
}

TEST_CASE("score formula: single synonym token") {
    double score = meteor({"fast"}, {"quick"}, fixture_synonyms());
    // m=1, P=R=1, F_mean=1, penalty=0.5 → 0.5
    CHECK(score == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("score is zero when nothing aligns") {
    CHECK(meteor({"x"}, {"y"}, SynonymTable{}) == 0.0);
    CHECK(meteor({}, {"y"}, SynonymTable{}) == 0.0);
    CHECK(meteor({"x"}, {}, SynonymTable{}) == 0.0);
    CHECK(meteor({}, {}, SynonymTable{}) == 0.0);
}

TEST_CASE("meteor_score edge cases follow the formula") {
    Alignment a;
    CHECK(meteor_score(a, 3, 3) == 0.0);  // no pairs

    a.pairs.push_back(MatchPair{0, 0, MatchStage::Exact});
    a.chunk_count = 1;
    // m=1, P=1/2, R=1/3: F_mean = 10PR/(R+9P) with penalty 0.5.
    double p = 0.5, r = 1.0 / 3.0;
    double f_mean = 10 * p * r / (r + 9 * p);
    CHECK(meteor_score(a, 2, 3) == doctest::Approx(f_mean * 0.5).epsilon(1e-12));
}

TEST_CASE("an empty synonym table degrades to exact plus stem") {
    SynonymTable empty;
    CHECK(meteor({"fast"}, {"quick"}, empty) == 0.0);
    CHECK(meteor({"cats"}, {"cat"}, empty) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("meteor stays in [0,1] on random pairs") {
    std::mt19937_64 rng(31337);
    SynonymTable syn = fixture_synonyms();
    for (int iter = 0; iter < 2000; iter++) {
        double s = meteor(random_seq(rng, 10), random_seq(rng, 10), syn);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
}
