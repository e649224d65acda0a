#include "aspectgen/wiki/wikitext.hpp"

#include <cctype>
#include <string_view>

namespace aspectgen::wiki {

namespace {

bool starts_with_at(std::string_view s, std::size_t i, std::string_view what) {
    return s.size() - i >= what.size() && s.compare(i, what.size(), what) == 0;
}

bool iequal(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); i++)
        if (std::tolower(static_cast<unsigned char>(a[i])) !=
            std::tolower(static_cast<unsigned char>(b[i])))
            return false;
    return true;
}

std::string strip_comments(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (starts_with_at(s, i, "<!--")) {
            std::size_t end = s.find("-->", i + 4);
            i = end == std::string_view::npos ? s.size() : end + 3;
        } else {
            out += s[i++];
        }
    }
    return out;
}

// Removes <ref .../> and <ref ...>...</ref>, case-insensitively. Tags whose
// name merely starts with "ref" (like <references/>) are left for the generic
// tag pass.
std::string strip_refs(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (starts_with_at(s, i, "<") && s.size() - i >= 4 &&
            iequal(s.substr(i + 1, 3), "ref") &&
            (i + 4 == s.size() ||
             !std::isalnum(static_cast<unsigned char>(s[i + 4])))) {
            std::size_t gt = s.find('>', i + 4);
            if (gt == std::string_view::npos) {
                i = s.size();  // unclosed tag: treat as running to the end
                break;
            }
            if (s[gt - 1] == '/') {
                i = gt + 1;  // self-closing
                continue;
            }
            // Find the matching close tag.
            std::size_t j = gt + 1;
            std::size_t close = std::string_view::npos;
            while (j + 5 <= s.size()) {
                if (s[j] == '<' && s[j + 1] == '/' &&
                    iequal(s.substr(j + 2, 3), "ref")) {
                    std::size_t end = s.find('>', j + 2);
                    close = end == std::string_view::npos ? s.size() : end + 1;
                    break;
                }
                j++;
            }
            i = close == std::string_view::npos ? s.size() : close;
        } else {
            out += s[i++];
        }
    }
    return out;
}

// Removes nested open...close regions, e.g. {{...}} or {|...|}. An
// unbalanced open runs to end of input.
std::string strip_nested(std::string_view s, std::string_view open,
                         std::string_view close) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (starts_with_at(s, i, open)) {
            int depth = 1;
            std::size_t j = i + open.size();
            while (j < s.size() && depth > 0) {
                if (starts_with_at(s, j, open)) {
                    depth++;
                    j += open.size();
                } else if (starts_with_at(s, j, close)) {
                    depth--;
                    j += close.size();
                } else {
                    j++;
                }
            }
            i = j;
        } else {
            out += s[i++];
        }
    }
    return out;
}

bool is_media_or_category(std::string_view target) {
    std::size_t start = 0;
    if (!target.empty() && target[0] == ':') start = 1;
    std::size_t colon = target.find(':', start);
    if (colon == std::string_view::npos) return false;
    std::string_view ns = target.substr(start, colon - start);
    return iequal(ns, "File") || iequal(ns, "Image") || iequal(ns, "Category");
}

// Internal links: [[Target]] keeps the target, [[Target|shown]] keeps what
// follows the first top-level pipe, and media/category links vanish whole.
// Handles nesting (links inside the shown text of a media link).
std::string rewrite_internal_links(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (!starts_with_at(s, i, "[[")) {
            out += s[i++];
            continue;
        }
        int depth = 1;
        std::size_t j = i + 2;
        std::size_t pipe = std::string_view::npos;  // first pipe at depth 1
        while (j < s.size() && depth > 0) {
            if (starts_with_at(s, j, "[[")) {
                depth++;
                j += 2;
            } else if (starts_with_at(s, j, "]]")) {
                depth--;
                j += 2;
            } else {
                if (s[j] == '|' && depth == 1 && pipe == std::string_view::npos)
                    pipe = j;
                j++;
            }
        }
        std::size_t inner_end = depth == 0 ? j - 2 : s.size();
        std::string_view target = s.substr(
            i + 2, (pipe == std::string_view::npos ? inner_end : pipe) - (i + 2));
        if (!is_media_or_category(target)) {
            std::string_view shown = pipe == std::string_view::npos
                                         ? target
                                         : s.substr(pipe + 1, inner_end - pipe - 1);
            out += rewrite_internal_links(shown);
        }
        i = j;
    }
    return out;
}

bool has_url_scheme(std::string_view s) {
    return starts_with_at(s, 0, "http://") || starts_with_at(s, 0, "https://") ||
           starts_with_at(s, 0, "ftp://");
}

// External links: [url label] keeps the label, [url] disappears. Square
// brackets not introducing a URL are ordinary text.
std::string rewrite_external_links(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '[' || !has_url_scheme(s.substr(i + 1))) {
            out += s[i++];
            continue;
        }
        std::size_t end = s.find(']', i + 1);
        if (end == std::string_view::npos) end = s.size();
        std::string_view inner = s.substr(i + 1, end - i - 1);
        std::size_t sp = inner.find_first_of(" \t\n");
        if (sp != std::string_view::npos) {
            std::size_t label = inner.find_first_not_of(" \t\n", sp);
            if (label != std::string_view::npos) out += inner.substr(label);
        }
        i = end < s.size() ? end + 1 : end;
    }
    return out;
}

// Bold/italic markers are runs of two or more apostrophes.
std::string strip_quotes(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '\'') {
            std::size_t j = i;
            while (j < s.size() && s[j] == '\'') j++;
            if (j - i == 1) out += '\'';
            i = j;
        } else {
            out += s[i++];
        }
    }
    return out;
}

// Any leftover <tag ...> or </tag>; '<' not followed by a letter or '/' is
// ordinary text.
std::string strip_tags(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '<' && i + 1 < s.size() &&
            (std::isalpha(static_cast<unsigned char>(s[i + 1])) ||
             s[i + 1] == '/')) {
            std::size_t gt = s.find('>', i + 1);
            i = gt == std::string_view::npos ? s.size() : gt + 1;
        } else {
            out += s[i++];
        }
    }
    return out;
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_ws = true;  // leading whitespace is dropped
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_ws = true;
        } else {
            if (in_ws && !out.empty()) out += ' ';
            in_ws = false;
            out += c;
        }
    }
    return out;
}

}  // namespace

std::string clean_wikitext(const std::string& wikitext) {
    std::string t = strip_comments(wikitext);
    t = strip_refs(t);
    t = strip_nested(t, "{{", "}}");
    t = strip_nested(t, "{|", "|}");
    t = rewrite_internal_links(t);
    t = rewrite_external_links(t);
    t = strip_quotes(t);
    t = strip_tags(t);
    return collapse_whitespace(t);
}

}  // namespace aspectgen::wiki
