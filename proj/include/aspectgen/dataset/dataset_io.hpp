#ifndef ASPECTGEN_DATASET_DATASET_IO_HPP
#define ASPECTGEN_DATASET_DATASET_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "aspectgen/dataset/records.hpp"
#include "aspectgen/dataset/splits.hpp"

namespace aspectgen::dataset {

// One JSON object per line with keys record_id, query, document,
// explanation, page_id, section_index.
void write_jsonl(const DatasetSplit& split, const std::string& path);

// Reads a split back; the name is taken from the file stem. Throws
// JsonlError naming the offending line on bad JSON, missing or mistyped
// keys, or an empty query/document/explanation.
DatasetSplit read_jsonl(const std::string& path);

struct DatasetCounts {
    std::size_t pages = 0;     // pages seen in the dump
    std::size_t articles = 0;  // articles that passed qualification
    std::size_t records = 0;
    std::size_t train = 0;
    std::size_t dev = 0;
    std::size_t test = 0;
};

// Writes dataset_card.json describing how the dataset was produced: source
// dump identifier, filter parameters, split fractions, seed, shuffle
// procedure, and the resulting counts.
void write_dataset_card(const std::string& path, const std::string& dump_id,
                        const FilterParams& filters, const SplitConfig& config,
                        const DatasetCounts& counts);

}  // namespace aspectgen::dataset

#endif
