#include "aspectgen/dataset/splits.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

#include "aspectgen/errors.hpp"

namespace aspectgen::dataset {

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    if (n == 0) throw Error("bounded_draw: empty range");
    std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

SplitResult assign_splits(const std::vector<ExplanationRecord>& records,
                          const SplitConfig& config) {
    if (config.train_fraction < 0 || config.dev_fraction < 0 ||
        config.test_fraction < 0)
        throw ConfigError("split fractions must be non-negative");
    double sum =
        config.train_fraction + config.dev_fraction + config.test_fraction;
    if (std::abs(sum - 1.0) > 1e-9)
        throw ConfigError("split fractions must sum to 1, got " +
                          std::to_string(sum));

    // Group records by query, keeping first-appearance order.
    std::vector<std::vector<const ExplanationRecord*>> groups;
    std::unordered_map<std::string, std::size_t> index_of;
    for (const auto& r : records) {
        auto [it, inserted] = index_of.try_emplace(r.query, groups.size());
        if (inserted) groups.emplace_back();
        groups[it->second].push_back(&r);
    }
    if (groups.size() < 3)
        throw ConfigError("need at least 3 distinct queries to split, got " +
                          std::to_string(groups.size()));

    deterministic_shuffle(groups, config.seed);

    double n = static_cast<double>(records.size());
    double t1 = config.train_fraction * n;
    double t2 = (config.train_fraction + config.dev_fraction) * n;
    SplitResult out;
    out.train.name = "train";
    out.dev.name = "dev";
    out.test.name = "test";
    double c = 0;
    for (const auto& g : groups) {
        DatasetSplit* dest;
        if (c < t1)
            dest = &out.train;
        else if (c < t2)
            dest = &out.dev;
        else
            dest = &out.test;
        for (const ExplanationRecord* r : g) dest->records.push_back(*r);
        c += static_cast<double>(g.size());
    }
    return out;
}

}  // namespace aspectgen::dataset
