#ifndef ASPECTGEN_DATASET_SPLITS_HPP
#define ASPECTGEN_DATASET_SPLITS_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aspectgen/dataset/records.hpp"

namespace aspectgen::dataset {

struct SplitConfig {
    double train_fraction = 0.8;
    double dev_fraction = 0.1;
    double test_fraction = 0.1;
    std::uint64_t seed = 0;
};

struct DatasetSplit {
    std::string name;  // train, dev or test
    std::vector<ExplanationRecord> records;
};

struct SplitResult {
    DatasetSplit train;
    DatasetSplit dev;
    DatasetSplit test;
};

// Uniform draw from [0, n) by rejection, so the result does not depend on
// how any particular standard library maps engine output to a range.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n);

// In-place Fisher-Yates, high index down, using bounded_draw.
template <typename T>
void deterministic_shuffle(std::vector<T>& v, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = v.size(); i > 1; i--) {
        std::uint64_t j = bounded_draw(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

// Splits records so that all records sharing a query land in the same split.
// Query groups (keyed by exact query string, ordered by first appearance)
// are shuffled with the seed, then dealt greedily: a group goes to train
// while the running record count is below train_fraction*N, to dev while
// below (train+dev)*N, and to test afterwards. Throws ConfigError when the
// fractions are invalid or there are fewer than three groups.
SplitResult assign_splits(const std::vector<ExplanationRecord>& records,
                          const SplitConfig& config);

}  // namespace aspectgen::dataset

#endif
