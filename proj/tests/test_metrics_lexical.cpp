#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <string>

#include "aspectgen/errors.hpp"
#include "aspectgen/metrics/lexical.hpp"
#include "aspectgen/metrics/types.hpp"

using namespace aspectgen;
using namespace aspectgen::metrics;

namespace {

TokenSeq random_seq(std::mt19937_64& rng, std::size_t max_len,
                    std::size_t vocab) {
    TokenSeq seq;
    std::size_t len = rng() % (max_len + 1);
    for (std::size_t i = 0; i < len; i++)
        seq.push_back("w" + std::to_string(rng() % vocab));
    return seq;
}

std::size_t naive_multiset_overlap(const TokenSeq& a, const TokenSeq& b) {
    std::map<std::string, std::size_t> ca, cb;
    for (const auto& t : a) ca[t]++;
    for (const auto& t : b) cb[t]++;
    std::size_t overlap = 0;
    for (const auto& [tok, n] : ca) {
        auto it = cb.find(tok);
        if (it != cb.end()) overlap += std::min(n, it->second);
    }
    return overlap;
}

}  // namespace

TEST_CASE("tokenization lowercases, splits punctuation, keeps other bytes") {
    CHECK(normalize_tokenize("The cat.") == TokenSeq{"the", "cat", "."});
    CHECK(normalize_tokenize("") == TokenSeq{});
    CHECK(normalize_tokenize("Don't stop") == TokenSeq{"don", "'", "t", "stop"});
    CHECK(normalize_tokenize("A  B\tC\n") == TokenSeq{"a", "b", "c"});
    CHECK(normalize_tokenize("Café") == TokenSeq{"caf\xc3\xa9"});  // bytes kept
    CHECK(normalize_tokenize("x-1,y") == TokenSeq{"x", "-", "1", ",", "y"});
}

TEST_CASE("unigram overlap is a multiset intersection") {
    CHECK(unigram_overlap({"the", "cat", "sat"}, {"the", "cat", "ate", "fish"}) ==
          2);
    CHECK(unigram_overlap({"the", "the"}, {"the"}) == 1);  // clipping
    CHECK(unigram_overlap({}, {"x"}) == 0);
    CHECK(unigram_overlap({"x"}, {}) == 0);
}

TEST_CASE("ROUGE-1 on the cat/fish pair gives F = 4/7") {
    auto s = rouge1({"the", "cat", "sat"}, {"the", "cat", "ate", "fish"});
    CHECK(s.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(s.recall == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.f == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("ROUGE-1 identity, disjoint and empty cases") {
    TokenSeq x = {"a", "b", "c"};
    auto s = rouge1(x, x);
    CHECK(s.precision == 1.0);
    CHECK(s.recall == 1.0);
    CHECK(s.f == 1.0);

    auto d = rouge1({"a"}, {"b"});
    CHECK(d.precision == 0.0);
    CHECK(d.recall == 0.0);
    CHECK(d.f == 0.0);

    auto e = rouge1({}, {});
    CHECK(e.precision == 0.0);
    CHECK(e.recall == 0.0);
    CHECK(e.f == 0.0);

    auto half = rouge1({}, {"a"});
    CHECK(half.f == 0.0);
}

TEST_CASE("ROUGE-1 F is symmetric and matches the naive oracle") {
    std::mt19937_64 rng(99);
    for (int iter = 0; iter < 1000; iter++) {
        TokenSeq a = random_seq(rng, 12, 6);
        TokenSeq b = random_seq(rng, 12, 6);
        CHECK(unigram_overlap(a, b) == naive_multiset_overlap(a, b));
        auto ab = rouge1(a, b);
        auto ba = rouge1(b, a);
        CHECK(ab.f == doctest::Approx(ba.f).epsilon(1e-12));
        CHECK(ab.precision == doctest::Approx(ba.recall).epsilon(1e-12));
        CHECK(ab.precision >= 0.0);
        CHECK(ab.f <= 1.0);
    }
}

TEST_CASE("BLEU clips repeated unigrams") {
    CHECK(bleu({"the", "the", "the"}, {"the", "cat"}, 1) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("BLEU identity needs the sequence to reach max_n") {
    TokenSeq four = {"a", "b", "c", "d"};
    CHECK(bleu(four, four, 4) == doctest::Approx(1.0).epsilon(1e-12));
    TokenSeq three = {"a", "b", "c"};
    CHECK(bleu(three, three, 4) == 0.0);  // no 4-grams, no smoothing
    CHECK(bleu(three, three, 3) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("BLEU brevity penalty punishes short candidates") {
    // Perfect unigram precision, half-length candidate: BP = e^{1-2} = 1/e.
    double score = bleu({"the", "cat"}, {"the", "cat", "sat", "on"}, 1);
    CHECK(score == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    // Long candidates are not rewarded: BP capped at 1.
    double capped = bleu({"the", "cat", "sat"}, {"the", "cat", "sat"}, 1);
    CHECK(capped == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("BLEU zero cases") {
    CHECK(bleu({"a"}, {"b"}, 1) == 0.0);             // disjoint
    CHECK(bleu({}, {"a"}, 1) == 0.0);                // empty candidate
    CHECK(bleu({"a", "c"}, {"a", "b"}, 2) == 0.0);   // shared unigram, no bigram
}

TEST_CASE("BLEU rejects max_n below 1") {
    CHECK_THROWS_AS(bleu({"a"}, {"a"}, 0), MetricError);
    CHECK_THROWS_AS(bleu({"a"}, {"a"}, -3), MetricError);
}

TEST_CASE("BLEU mixes n-gram orders geometrically") {
    // candidate [a, b, c], reference [a, b, d]: p1 = 2/3, p2 = 1/2, BP = 1.
    double score = bleu({"a", "b", "c"}, {"a", "b", "d"}, 2);
    CHECK(score ==
          doctest::Approx(std::sqrt((2.0 / 3.0) * 0.5)).epsilon(1e-12));
}

TEST_CASE("BLEU stays within [0,1] on random pairs") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 2000; iter++) {
        TokenSeq a = random_seq(rng, 10, 4);
        TokenSeq b = random_seq(rng, 10, 4);
        double s = bleu(a, b, 1 + static_cast<int>(rng() % 4));
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
}
