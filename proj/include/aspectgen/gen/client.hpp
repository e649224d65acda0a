#ifndef ASPECTGEN_GEN_CLIENT_HPP
#define ASPECTGEN_GEN_CLIENT_HPP

#include <vector>

#include "aspectgen/gen/types.hpp"

namespace aspectgen::gen {

// One POST to {base_url}/v1/chat/completions, with retries on 429/5xx and
// transport errors. 401/403 and malformed bodies fail without retrying.
GenerationResult generate(const GenerationRequest& request,
                          const EndpointConfig& config);

// Worker pool bounded by config.max_concurrent; results come back in request
// order and per-item failures never abort the batch.
std::vector<GenerationResult> generate_batch(
    const std::vector<GenerationRequest>& requests, const EndpointConfig& config);

}  // namespace aspectgen::gen

#endif
