#ifndef ASPECTGEN_WIKI_ARTICLES_HPP
#define ASPECTGEN_WIKI_ARTICLES_HPP

#include <functional>
#include <string>
#include <vector>

#include "aspectgen/wiki/page.hpp"

namespace aspectgen::wiki {

// Pages worth cleaning: real articles, not redirects or template/admin pages.
bool is_article(const RawPage& page);

// Sections a page and strips markup from every section body.
CleanArticle clean_page(const RawPage& page);

// Cleans every article page of a batch, preserving input order. The two
// variants compute the same thing; the serial one is the reference, the
// parallel one spreads page cleaning across OpenMP threads.
std::vector<CleanArticle> extract_articles_serial(
    const std::vector<RawPage>& pages);
std::vector<CleanArticle> extract_articles_parallel(
    const std::vector<RawPage>& pages);

// Streams a dump file in batches of batch_size pages so memory stays bounded
// by the batch, cleaning each batch with the parallel kernel. Returns the
// number of pages seen (articles or not).
std::size_t for_each_article(const std::string& dump_path,
                             std::size_t batch_size,
                             const std::function<void(CleanArticle&&)>& fn);

}  // namespace aspectgen::wiki

#endif
