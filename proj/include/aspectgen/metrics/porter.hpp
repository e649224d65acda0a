#ifndef ASPECTGEN_METRICS_PORTER_HPP
#define ASPECTGEN_METRICS_PORTER_HPP

#include <string>

namespace aspectgen::metrics {

// Porter's 1980 suffix-stripping algorithm, steps 1a through 5b as
// published. Input is expected lowercase (uppercase ASCII is folded first);
// deterministic.
std::string porter_stem(const std::string& token);

}  // namespace aspectgen::metrics

#endif
