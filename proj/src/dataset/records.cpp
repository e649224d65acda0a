#include "aspectgen/dataset/records.hpp"

#include "aspectgen/wiki/sections.hpp"

namespace aspectgen::dataset {

std::optional<std::vector<wiki::Section>> qualify_article(
    const wiki::CleanArticle& article, const FilterParams& filters) {
    std::vector<wiki::Section> qualifying;
    for (const auto& sec : article.sections) {
        if (!wiki::is_content_heading(sec.heading)) continue;
        if (sec.token_count < filters.min_tokens ||
            sec.token_count > filters.max_tokens)
            continue;
        qualifying.push_back(sec);
    }
    if (qualifying.size() < filters.min_sections) return std::nullopt;
    return qualifying;
}

std::vector<ExplanationRecord> build_records(
    const wiki::CleanArticle& article,
    const std::vector<wiki::Section>& qualifying,
    std::uint64_t& next_record_id) {
    std::vector<ExplanationRecord> out;
    out.reserve(qualifying.size());
    // qualifying is an in-order subsequence of article.sections; walk both to
    // recover each section's original position.
    std::size_t qi = 0;
    for (std::size_t i = 0; i < article.sections.size() && qi < qualifying.size();
         i++) {
        const auto& sec = article.sections[i];
        if (sec.heading != qualifying[qi].heading ||
            sec.body_clean != qualifying[qi].body_clean)
            continue;
        ExplanationRecord r;
        r.record_id = next_record_id++;
        r.query = article.title;
        r.document = sec.body_clean;
        r.explanation = sec.heading;
        r.page_id = article.page_id;
        r.section_index = i;
        out.push_back(std::move(r));
        qi++;
    }
    return out;
}

}  // namespace aspectgen::dataset
