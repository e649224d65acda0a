#include "aspectgen/wiki/sections.hpp"

#include <array>
#include <cctype>

namespace aspectgen::wiki {

namespace {

bool is_blank(char c) {
    return c == ' ' || c == '\t';
}

std::string casefold_collapse(const std::string& s) {
    std::string out;
    bool in_ws = true;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) out += ' ';
            in_ws = false;
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    return out;
}

}  // namespace

std::optional<std::pair<int, std::string>> parse_heading_line(
    const std::string& line) {
    std::size_t n = line.size();
    std::size_t lead = 0;
    while (lead < n && line[lead] == '=') lead++;
    std::size_t trail = 0;
    while (trail < n && line[n - 1 - trail] == '=') trail++;
    if (lead < 2 || lead > 6 || lead != trail) return std::nullopt;
    if (lead + trail >= n) return std::nullopt;  // nothing between the runs
    std::size_t b = lead, e = n - trail;
    while (b < e && is_blank(line[b])) b++;
    while (e > b && is_blank(line[e - 1])) e--;
    if (b == e) return std::nullopt;  // blank title
    return std::make_pair(static_cast<int>(lead), line.substr(b, e - b));
}

std::vector<Section> split_sections(const std::string& wikitext) {
    std::vector<Section> sections;
    Section* current = nullptr;
    std::string body;  // accumulating body of `current`

    auto flush = [&] {
        if (current) current->body_wikitext = std::move(body);
        body.clear();
    };

    std::size_t pos = 0;
    while (pos <= wikitext.size()) {
        std::size_t nl = wikitext.find('\n', pos);
        std::string line = nl == std::string::npos
                               ? wikitext.substr(pos)
                               : wikitext.substr(pos, nl - pos);
        if (auto h = parse_heading_line(line)) {
            if (h->first == 2) {
                flush();
                Section s;
                s.heading = h->second;
                s.level = 2;
                sections.push_back(std::move(s));
                current = &sections.back();
            }
            // Deeper heading lines vanish; their body text stays where it is.
        } else if (current) {
            if (!body.empty()) body += '\n';
            body += line;
        }
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    flush();
    return sections;
}

std::size_t count_tokens(const std::string& text) {
    std::size_t count = 0;
    bool in_token = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            count++;
        }
    }
    return count;
}

bool is_content_heading(const std::string& heading) {
    static const std::array<const char*, 10> boilerplate = {
        "references",      "external links", "see also",  "notes",
        "further reading", "bibliography",   "sources",   "footnotes",
        "citations",       "gallery"};
    std::string h = casefold_collapse(heading);
    for (const char* b : boilerplate)
        if (h == b) return false;
    return true;
}

}  // namespace aspectgen::wiki
