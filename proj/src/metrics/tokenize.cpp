#include "aspectgen/metrics/types.hpp"

#include <cctype>

namespace aspectgen::metrics {

TokenSeq normalize_tokenize(const std::string& text) {
    TokenSeq out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    };
    for (unsigned char c : text) {
        if (c < 128 && std::isspace(c)) {
            flush();
        } else if (c < 128 && std::ispunct(c)) {
            flush();
            out.emplace_back(1, static_cast<char>(c));
        } else if (c < 128) {
            cur += static_cast<char>(std::tolower(c));
        } else {
            cur += static_cast<char>(c);
        }
    }
    flush();
    return out;
}

}  // namespace aspectgen::metrics
