#ifndef ASPECTGEN_GEN_MOCK_SERVER_HPP
#define ASPECTGEN_GEN_MOCK_SERVER_HPP

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace aspectgen::gen {

// Stand-in for a chat-completions endpoint. Modes:
//   echo        — reply with the user message verbatim (default)
//   fixed-text  — reply with one configured string; an optional reply map
//                 overrides it per request when a map key occurs in the
//                 user message (longest matching key wins)
//   fail-n-times — answer the first N requests with an error status,
//                 then fall through to the text mode
//   delay       — sleep before every reply
// The server counts in-flight requests so tests can check client-side
// concurrency limits, and exposes them at GET /_mock/stats.
class MockServer {
public:
    MockServer();
    ~MockServer();
    MockServer(const MockServer&) = delete;
    MockServer& operator=(const MockServer&) = delete;

    void set_mode_echo();
    void set_mode_fixed(std::string text);
    // match is a plain substring searched in the user message
    void set_reply_map(std::vector<std::pair<std::string, std::string>> entries);
    void set_fail_first(int n, int status_code = 429);
    void set_delay(std::chrono::milliseconds delay);
    void set_garbage_body(bool enabled);  // 200 with a non-JSON body

    // Binds 127.0.0.1 on a free port (or the given one) and serves from a
    // background thread. Returns the bound port.
    int start(int port = 0);
    void stop();

    int port() const;
    std::string base_url() const;

    std::uint64_t total_requests() const;
    int max_in_flight() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace aspectgen::gen

#endif
