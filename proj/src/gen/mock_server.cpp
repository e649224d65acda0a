#include "aspectgen/gen/mock_server.hpp"

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "aspectgen/errors.hpp"

using nlohmann::json;

namespace aspectgen::gen {

namespace {

std::size_t count_ws_tokens(const std::string& s) {
    std::istringstream in(s);
    std::string tok;
    std::size_t n = 0;
    while (in >> tok) n++;
    return n;
}

}  // namespace

struct MockServer::Impl {
    httplib::Server server;
    std::thread serve_thread;
    int bound_port = 0;

    std::mutex config_mutex;
    bool echo = true;
    std::string fixed_text;
    std::vector<std::pair<std::string, std::string>> reply_map;
    std::chrono::milliseconds delay{0};
    bool garbage_body = false;
    int fail_status = 429;

    std::atomic<int> fail_remaining{0};
    std::atomic<int> in_flight{0};
    std::atomic<int> peak_in_flight{0};
    std::atomic<std::uint64_t> requests{0};

    Impl() {
        // The default pool is sized off hardware_concurrency, which can be 1
        // in CI; delayed handlers must not starve the stats endpoint.
        server.new_task_queue = [] { return new httplib::ThreadPool(16); };

        server.Post("/v1/chat/completions",
                    [this](const httplib::Request& req, httplib::Response& res) {
                        handle_completion(req, res);
                    });
        server.Get("/_mock/stats",
                   [this](const httplib::Request&, httplib::Response& res) {
                       json j;
                       j["total_requests"] = requests.load();
                       j["in_flight"] = in_flight.load();
                       j["max_in_flight"] = peak_in_flight.load();
                       res.set_content(j.dump(), "application/json");
                   });
    }

    void handle_completion(const httplib::Request& req, httplib::Response& res) {
        requests.fetch_add(1);
        int now = in_flight.fetch_add(1) + 1;
        int peak = peak_in_flight.load();
        while (now > peak && !peak_in_flight.compare_exchange_weak(peak, now)) {
        }

        std::chrono::milliseconds my_delay;
        {
            std::lock_guard<std::mutex> lock(config_mutex);
            my_delay = delay;
        }
        if (my_delay.count() > 0) std::this_thread::sleep_for(my_delay);

        reply(req, res);
        in_flight.fetch_sub(1);
    }

    void reply(const httplib::Request& req, httplib::Response& res) {
        int remaining = fail_remaining.load();
        while (remaining > 0 &&
               !fail_remaining.compare_exchange_weak(remaining, remaining - 1)) {
        }
        std::lock_guard<std::mutex> lock(config_mutex);
        if (remaining > 0) {
            res.status = fail_status;
            res.set_content("{\"error\":\"scripted failure\"}", "application/json");
            return;
        }
        if (garbage_body) {
            res.set_content("this is not json", "text/plain");
            return;
        }

        std::string content;
        json body = json::parse(req.body, nullptr, false);
        if (!body.is_discarded() && body.contains("messages") &&
            body["messages"].is_array() && !body["messages"].empty()) {
            const json& last = body["messages"].back();
            if (last.is_object() && last.contains("content") &&
                last["content"].is_string())
                content = last["content"].get<std::string>();
        }

        // Longest matching key wins, so a key contained in another cannot
        // shadow the more specific entry.
        std::string out = echo ? content : fixed_text;
        std::size_t best_len = 0;
        for (const auto& [needle, text] : reply_map) {
            if (needle.size() > best_len &&
                content.find(needle) != std::string::npos) {
                out = text;
                best_len = needle.size();
            }
        }

        json resp;
        resp["id"] = "mock-" + std::to_string(requests.load());
        resp["object"] = "chat.completion";
        resp["model"] = "mock";
        resp["choices"] = json::array(
            {{{"index", 0},
              {"message", {{"role", "assistant"}, {"content", out}}},
              {"finish_reason", "stop"}}});
        resp["usage"] = {{"prompt_tokens", count_ws_tokens(content)},
                         {"completion_tokens", count_ws_tokens(out)}};
        res.set_content(resp.dump(), "application/json");
    }
};

MockServer::MockServer() : impl_(std::make_unique<Impl>()) {}

MockServer::~MockServer() { stop(); }

void MockServer::set_mode_echo() {
    std::lock_guard<std::mutex> lock(impl_->config_mutex);
    impl_->echo = true;
}

void MockServer::set_mode_fixed(std::string text) {
    std::lock_guard<std::mutex> lock(impl_->config_mutex);
    impl_->echo = false;
    impl_->fixed_text = std::move(text);
}

void MockServer::set_reply_map(
    std::vector<std::pair<std::string, std::string>> entries) {
    std::lock_guard<std::mutex> lock(impl_->config_mutex);
    impl_->echo = false;
    impl_->reply_map = std::move(entries);
}

void MockServer::set_fail_first(int n, int status_code) {
    std::lock_guard<std::mutex> lock(impl_->config_mutex);
    impl_->fail_status = status_code;
    impl_->fail_remaining.store(n);
}

void MockServer::set_delay(std::chrono::milliseconds delay) {
    std::lock_guard<std::mutex> lock(impl_->config_mutex);
    impl_->delay = delay;
}

void MockServer::set_garbage_body(bool enabled) {
    std::lock_guard<std::mutex> lock(impl_->config_mutex);
    impl_->garbage_body = enabled;
}

int MockServer::start(int port) {
    if (impl_->serve_thread.joinable())
        throw GenerationError("mock server already running");
    if (port == 0) {
        impl_->bound_port = impl_->server.bind_to_any_port("127.0.0.1");
        if (impl_->bound_port <= 0)
            throw GenerationError("mock server failed to bind a port");
    } else {
        if (!impl_->server.bind_to_port("127.0.0.1", port))
            throw GenerationError("mock server failed to bind port " +
                                  std::to_string(port));
        impl_->bound_port = port;
    }
    impl_->serve_thread = std::thread([this] { impl_->server.listen_after_bind(); });
    while (!impl_->server.is_running())
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
    return impl_->bound_port;
}

void MockServer::stop() {
    if (!impl_->serve_thread.joinable()) return;
    impl_->server.stop();
    impl_->serve_thread.join();
}

int MockServer::port() const { return impl_->bound_port; }

std::string MockServer::base_url() const {
    return "http://127.0.0.1:" + std::to_string(impl_->bound_port);
}

std::uint64_t MockServer::total_requests() const { return impl_->requests.load(); }

int MockServer::max_in_flight() const { return impl_->peak_in_flight.load(); }

}  // namespace aspectgen::gen
