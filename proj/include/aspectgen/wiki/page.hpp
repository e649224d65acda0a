#ifndef ASPECTGEN_WIKI_PAGE_HPP
#define ASPECTGEN_WIKI_PAGE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace aspectgen::wiki {

// One <page> element as it appears in a MediaWiki XML export.
struct RawPage {
    std::string title;
    int ns = 0;
    bool is_redirect = false;
    std::string wikitext;  // text of the page's revision, markup intact
    std::uint64_t page_id = 0;
};

// A top-level section of a page. Bodies of deeper subsections are folded
// into the parent; their heading lines are dropped. body_clean/token_count
// are filled by the cleaning pass, not by the splitter.
struct Section {
    std::string heading;  // no '=' markers, trimmed
    int level = 2;
    std::string body_wikitext;
    std::string body_clean;
    std::size_t token_count = 0;
};

// An article page whose sections have been cleaned. Only namespace-0,
// non-redirect, non-disambiguation pages become articles.
struct CleanArticle {
    std::string title;
    std::uint64_t page_id = 0;
    std::vector<Section> sections;  // document order
};

}  // namespace aspectgen::wiki

#endif
