#include "aspectgen/gen/client.hpp"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "aspectgen/errors.hpp"

using nlohmann::json;

namespace aspectgen::gen {

namespace {

struct SplitUrl {
    std::string host;  // scheme://host:port, what httplib::Client wants
    std::string path_prefix;
};

SplitUrl split_base_url(const std::string& base_url) {
    auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos)
        throw ConfigError("base_url must start with http:// or https://: " + base_url);
    auto path_start = base_url.find('/', scheme_end + 3);
    SplitUrl out;
    if (path_start == std::string::npos) {
        out.host = base_url;
    } else {
        out.host = base_url.substr(0, path_start);
        out.path_prefix = base_url.substr(path_start);
    }
    while (!out.path_prefix.empty() && out.path_prefix.back() == '/')
        out.path_prefix.pop_back();
    return out;
}

std::string build_body(const GenerationRequest& req, const EndpointConfig& config) {
    json body;
    body["model"] = config.model_id;
    body["messages"] = json::array({{{"role", "user"}, {"content", req.input_text}}});
    body["max_tokens"] = req.max_new_tokens;
    body["temperature"] = req.temperature;
    if (!req.stop_sequences.empty()) body["stop"] = req.stop_sequences;
    return body.dump();
}

// Pulls output text and token usage out of a chat-completions response.
// Returns false when the body does not have the expected shape.
bool parse_body(const std::string& body, GenerationResult& result) {
    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return false;
    if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty())
        return false;
    const json& choice = j["choices"][0];
    if (!choice.is_object() || !choice.contains("message")) return false;
    const json& message = choice["message"];
    if (!message.is_object() || !message.contains("content") ||
        !message["content"].is_string())
        return false;
    result.output_text = message["content"].get<std::string>();
    if (j.contains("usage") && j["usage"].is_object()) {
        const json& usage = j["usage"];
        if (usage.contains("prompt_tokens") &&
            usage["prompt_tokens"].is_number_unsigned())
            result.prompt_tokens = usage["prompt_tokens"].get<std::uint64_t>();
        if (usage.contains("completion_tokens") &&
            usage["completion_tokens"].is_number_unsigned())
            result.completion_tokens = usage["completion_tokens"].get<std::uint64_t>();
    }
    return true;
}

bool retryable_status(int status) {
    return status == 429 || (status >= 500 && status < 600);
}

}  // namespace

GenerationResult generate(const GenerationRequest& request,
                          const EndpointConfig& config) {
    if (config.max_concurrent < 1)
        throw ConfigError("max_concurrent must be at least 1");
    if (config.retry.max_attempts < 1)
        throw ConfigError("retry.max_attempts must be at least 1");

    SplitUrl url = split_base_url(config.base_url);
    std::string body = build_body(request, config);

    httplib::Headers headers{{"Content-Type", "application/json"}};
    if (!config.api_key_env.empty()) {
        const char* key = std::getenv(config.api_key_env.c_str());
        if (key && *key)
            headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    GenerationResult result;
    result.record_id = request.record_id;
    auto start = std::chrono::steady_clock::now();
    auto finish = [&]() {
        result.latency_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        return result;
    };

    std::string last_failure = "connect";
    for (int attempt = 1; attempt <= config.retry.max_attempts; attempt++) {
        result.attempts = attempt;
        if (attempt > 1) {
            auto delay = std::chrono::milliseconds(static_cast<long long>(
                static_cast<double>(config.retry.base_backoff.count()) *
                std::pow(config.retry.multiplier, attempt - 2)));
            result.backoffs.push_back(delay);
            std::this_thread::sleep_for(delay);
        }

        httplib::Client client(url.host);
        client.set_connection_timeout(config.timeout);
        client.set_read_timeout(config.timeout);
        client.set_write_timeout(config.timeout);

        auto res = client.Post(url.path_prefix + "/v1/chat/completions", headers,
                               body, "application/json");
        if (!res) {
            last_failure = res.error() == httplib::Error::Connection ||
                                   res.error() == httplib::Error::ConnectionTimeout
                               ? "connect"
                               : "timeout";
            continue;
        }
        if (res->status == 401 || res->status == 403) {
            result.failure_reason = "http " + std::to_string(res->status);
            return finish();
        }
        if (retryable_status(res->status)) {
            last_failure = "http " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            result.failure_reason = "http " + std::to_string(res->status);
            return finish();
        }
        if (!parse_body(res->body, result)) {
            result.failure_reason = "protocol";
            return finish();
        }
        result.ok = true;
        return finish();
    }
    result.failure_reason = last_failure;
    return finish();
}

std::vector<GenerationResult> generate_batch(
    const std::vector<GenerationRequest>& requests, const EndpointConfig& config) {
    if (config.max_concurrent < 1)
        throw ConfigError("max_concurrent must be at least 1");
    std::vector<GenerationResult> results(requests.size());
    if (requests.empty()) return results;

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= requests.size()) break;
            results[i] = generate(requests[i], config);
        }
    };

    std::size_t n_workers = std::min<std::size_t>(
        static_cast<std::size_t>(config.max_concurrent), requests.size());
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; i++) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return results;
}

double aggregate_inference_time(const std::vector<GenerationResult>& results) {
    double total = 0.0;
    for (const auto& r : results)
        if (r.ok) total += r.latency_seconds;
    return total;
}

}  // namespace aspectgen::gen
