#ifndef ASPECTGEN_METRICS_TYPES_HPP
#define ASPECTGEN_METRICS_TYPES_HPP

#include <string>
#include <vector>

namespace aspectgen::metrics {

// Lowercased tokens; no token is empty or contains whitespace.
using TokenSeq = std::vector<std::string>;

struct ScoreTriple {
    double precision = 0.0;
    double recall = 0.0;
    double f = 0.0;
};

// Lowercase; ASCII punctuation characters become single-character tokens;
// everything else splits on whitespace. Bytes outside ASCII are kept as
// word characters.
TokenSeq normalize_tokenize(const std::string& text);

}  // namespace aspectgen::metrics

#endif
