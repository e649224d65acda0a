#ifndef ASPECTGEN_GEN_TYPES_HPP
#define ASPECTGEN_GEN_TYPES_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aspectgen::gen {

struct RetryPolicy {
    int max_attempts = 4;
    std::chrono::milliseconds base_backoff{500};
    double multiplier = 2.0;
};

struct EndpointConfig {
    std::string base_url;
    std::string api_key_env;  // env var holding the key; empty for local servers
    std::string model_id;
    std::chrono::milliseconds timeout{60000};
    int max_concurrent = 4;
    RetryPolicy retry;
};

struct GenerationRequest {
    std::uint64_t record_id = 0;
    std::string input_text;
    int max_new_tokens = 32;
    double temperature = 0.0;
    std::vector<std::string> stop_sequences;
};

struct GenerationResult {
    std::uint64_t record_id = 0;
    std::string output_text;
    double latency_seconds = 0.0;  // wall clock, first attempt to final response
    std::optional<std::uint64_t> prompt_tokens;
    std::optional<std::uint64_t> completion_tokens;
    bool ok = false;
    std::string failure_reason;  // empty when ok
    int attempts = 0;
    std::vector<std::chrono::milliseconds> backoffs;  // sleeps between attempts

    std::string status_string() const {
        return ok ? "ok" : "failed(" + failure_reason + ")";
    }
};

// Sum of latencies over successful results, in seconds.
double aggregate_inference_time(const std::vector<GenerationResult>& results);

}  // namespace aspectgen::gen

#endif
