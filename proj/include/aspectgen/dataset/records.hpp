#ifndef ASPECTGEN_DATASET_RECORDS_HPP
#define ASPECTGEN_DATASET_RECORDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aspectgen/wiki/page.hpp"

namespace aspectgen::dataset {

// One (query, document, explanation) sample: the page title asks, the
// section body answers, the section heading names the aspect.
struct ExplanationRecord {
    std::uint64_t record_id = 0;  // assigned monotonically across the corpus
    std::string query;
    std::string document;
    std::string explanation;
    std::uint64_t page_id = 0;
    std::size_t section_index = 0;  // position within the article's sections

    bool operator==(const ExplanationRecord&) const = default;
};

struct FilterParams {
    std::size_t min_tokens = 128;  // inclusive
    std::size_t max_tokens = 512;  // inclusive
    std::size_t min_sections = 3;  // qualifying sections an article needs
};

// The sections that could serve as samples: content heading and token count
// within bounds. Absent when fewer than min_sections qualify, which rejects
// the whole article.
std::optional<std::vector<wiki::Section>> qualify_article(
    const wiki::CleanArticle& article, const FilterParams& filters);

// One record per qualifying section. next_record_id supplies corpus-wide
// monotonic ids and is advanced past the ones consumed.
std::vector<ExplanationRecord> build_records(
    const wiki::CleanArticle& article,
    const std::vector<wiki::Section>& qualifying, std::uint64_t& next_record_id);

}  // namespace aspectgen::dataset

#endif
