#ifndef ASPECTGEN_WIKI_SECTIONS_HPP
#define ASPECTGEN_WIKI_SECTIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "aspectgen/wiki/page.hpp"

namespace aspectgen::wiki {

// Parses one line as a section heading: a run of 2..6 '=' on each end, equal
// on both sides, with non-blank text between. Returns the level and the
// trimmed text, or nothing if the line is not a well-formed heading.
std::optional<std::pair<int, std::string>> parse_heading_line(
    const std::string& line);

// Cuts a page into its top-level (level-2) sections. Text before the first
// heading is dropped. Deeper headings do not open new sections: their lines
// are removed and their bodies stay in the enclosing section. Lines that
// only look like headings (unbalanced, empty title, level 1 or 7+) are kept
// as body text.
std::vector<Section> split_sections(const std::string& wikitext);

// Number of whitespace-separated tokens.
std::size_t count_tokens(const std::string& text);

// False for boilerplate headings (references, external links, see also,
// notes, further reading, bibliography, sources, footnotes, citations,
// gallery — compared case-insensitively), true otherwise.
bool is_content_heading(const std::string& heading);

}  // namespace aspectgen::wiki

#endif
