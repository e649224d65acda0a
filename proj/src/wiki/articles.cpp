#include "aspectgen/wiki/articles.hpp"

#include <cstdint>

#include "aspectgen/wiki/dump_reader.hpp"
#include "aspectgen/wiki/sections.hpp"
#include "aspectgen/wiki/wikitext.hpp"

namespace aspectgen::wiki {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

bool is_article(const RawPage& page) {
    return page.ns == 0 && !page.is_redirect &&
           !ends_with(page.title, "(disambiguation)");
}

CleanArticle clean_page(const RawPage& page) {
    CleanArticle art;
    art.title = page.title;
    art.page_id = page.page_id;
    art.sections = split_sections(page.wikitext);
    for (Section& sec : art.sections) {
        sec.body_clean = clean_wikitext(sec.body_wikitext);
        sec.token_count = count_tokens(sec.body_clean);
    }
    return art;
}

std::vector<CleanArticle> extract_articles_serial(
    const std::vector<RawPage>& pages) {
    std::vector<CleanArticle> out;
    for (const RawPage& p : pages)
        if (is_article(p)) out.push_back(clean_page(p));
    return out;
}

std::vector<CleanArticle> extract_articles_parallel(
    const std::vector<RawPage>& pages) {
    std::vector<CleanArticle> slots(pages.size());
    std::vector<char> keep(pages.size(), 0);
    std::int64_t n = static_cast<std::int64_t>(pages.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; i++) {
        if (!is_article(pages[i])) continue;
        slots[i] = clean_page(pages[i]);
        keep[i] = 1;
    }
    std::vector<CleanArticle> out;
    for (std::int64_t i = 0; i < n; i++)
        if (keep[i]) out.push_back(std::move(slots[i]));
    return out;
}

std::size_t for_each_article(const std::string& dump_path,
                             std::size_t batch_size,
                             const std::function<void(CleanArticle&&)>& fn) {
    if (batch_size == 0) batch_size = 1;
    DumpReader reader(dump_path);
    std::size_t total_pages = 0;
    std::vector<RawPage> batch;
    batch.reserve(batch_size);
    auto flush = [&] {
        for (CleanArticle& art : extract_articles_parallel(batch))
            fn(std::move(art));
        batch.clear();
    };
    while (auto page = reader.next()) {
        total_pages++;
        batch.push_back(std::move(*page));
        if (batch.size() >= batch_size) flush();
    }
    flush();
    return total_pages;
}

}  // namespace aspectgen::wiki
