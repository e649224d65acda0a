#include "aspectgen/metrics/porter.hpp"

#include <array>
#include <cctype>
#include <string_view>

namespace aspectgen::metrics {

namespace {

bool is_vowel_letter(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool consonant(std::string_view w, std::size_t i) {
    char c = w[i];
    if (is_vowel_letter(c)) return false;
    if (c == 'y') return i == 0 || !consonant(w, i - 1);
    return true;
}

// m in the [C](VC)^m[V] decomposition.
int measure(std::string_view stem) {
    std::size_t i = 0, n = stem.size();
    int m = 0;
    while (i < n && consonant(stem, i)) i++;
    for (;;) {
        while (i < n && !consonant(stem, i)) i++;
        if (i >= n) return m;
        m++;
        while (i < n && consonant(stem, i)) i++;
        if (i >= n) return m;
    }
}

bool contains_vowel(std::string_view stem) {
    for (std::size_t i = 0; i < stem.size(); i++)
        if (!consonant(stem, i)) return true;
    return false;
}

bool ends_double_consonant(std::string_view w) {
    std::size_t n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && consonant(w, n - 1);
}

// *o condition: ends consonant-vowel-consonant, last not w, x or y.
bool ends_cvc(std::string_view w) {
    std::size_t n = w.size();
    if (n < 3) return false;
    if (!consonant(w, n - 3) || consonant(w, n - 2) || !consonant(w, n - 1))
        return false;
    char c = w[n - 1];
    return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(std::string_view w, std::string_view suf) {
    return w.size() >= suf.size() &&
           w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

void step1a(std::string& w) {
    if (ends_with(w, "sses")) {
        w.erase(w.size() - 2);  // sses -> ss
    } else if (ends_with(w, "ies")) {
        w.erase(w.size() - 2);  // ies -> i
    } else if (ends_with(w, "ss")) {
        // unchanged
    } else if (ends_with(w, "s")) {
        w.pop_back();
    }
}

void step1b(std::string& w) {
    if (ends_with(w, "eed")) {
        if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0)
            w.pop_back();  // eed -> ee
        return;
    }
    bool fired = false;
    if (ends_with(w, "ed") &&
        contains_vowel(std::string_view(w).substr(0, w.size() - 2))) {
        w.erase(w.size() - 2);
        fired = true;
    } else if (ends_with(w, "ing") &&
               contains_vowel(std::string_view(w).substr(0, w.size() - 3))) {
        w.erase(w.size() - 3);
        fired = true;
    }
    if (!fired) return;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w += 'e';
    } else if (ends_double_consonant(w) && w.back() != 'l' && w.back() != 's' &&
               w.back() != 'z') {
        w.pop_back();
    } else if (measure(w) == 1 && ends_cvc(w)) {
        w += 'e';
    }
}

void step1c(std::string& w) {
    if (ends_with(w, "y") &&
        contains_vowel(std::string_view(w).substr(0, w.size() - 1)))
        w.back() = 'i';
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Longest matching suffix wins; the measure condition is then checked on
// that rule alone — a failed condition does not fall through to shorter
// suffixes.
void apply_rules(std::string& w, const Rule* rules, std::size_t count,
                 int min_measure) {
    const Rule* best = nullptr;
    for (std::size_t i = 0; i < count; i++)
        if (ends_with(w, rules[i].suffix) &&
            (!best || rules[i].suffix.size() > best->suffix.size()))
            best = &rules[i];
    if (!best) return;
    std::string_view stem =
        std::string_view(w).substr(0, w.size() - best->suffix.size());
    if (measure(stem) < min_measure) return;
    w.erase(stem.size());
    w += best->replacement;
}

constexpr std::array<Rule, 20> kStep2Rules = {{
    {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
    {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
    {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
    {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
    {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},   {"biliti", "ble"},
}};

constexpr std::array<Rule, 7> kStep3Rules = {{
    {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
    {"ical", "ic"},  {"ful", ""},   {"ness", ""},
}};

constexpr std::array<std::string_view, 19> kStep4Suffixes = {
    "al", "ance", "ence", "er",    "ic",   "able", "ible", "ant", "ement", "ment",
    "ent", "ion", "ou",   "ism",   "ate",  "iti",  "ous",  "ive", "ize"};

void step4(std::string& w) {
    std::string_view best;
    for (std::string_view suf : kStep4Suffixes)
        if (ends_with(w, suf) && suf.size() > best.size()) best = suf;
    if (best.empty()) return;
    std::string_view stem = std::string_view(w).substr(0, w.size() - best.size());
    if (measure(stem) <= 1) return;
    if (best == "ion" && !(ends_with(stem, "s") || ends_with(stem, "t"))) return;
    w.erase(stem.size());
}

void step5a(std::string& w) {
    if (!ends_with(w, "e")) return;
    std::string_view stem = std::string_view(w).substr(0, w.size() - 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
}

void step5b(std::string& w) {
    if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l')
        w.pop_back();
}

}  // namespace

std::string porter_stem(const std::string& token) {
    std::string w;
    w.reserve(token.size());
    for (unsigned char c : token)
        w += static_cast<char>(c < 128 ? std::tolower(c) : c);
    step1a(w);
    step1b(w);
    step1c(w);
    apply_rules(w, kStep2Rules.data(), kStep2Rules.size(), 1);
    apply_rules(w, kStep3Rules.data(), kStep3Rules.size(), 1);
    step4(w);
    step5a(w);
    step5b(w);
    return w;
}

}  // namespace aspectgen::metrics
