// Command-line front end: dataset building, prompt formatting, generation,
// scoring and reporting as separate subcommands plus a full `run` pipeline
// and the bundled mock endpoint.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "aspectgen/gen/client.hpp"
#include "aspectgen/gen/mock_server.hpp"
#include "aspectgen/run/config.hpp"
#include "aspectgen/run/report.hpp"
#include "aspectgen/run/runner.hpp"

namespace fs = std::filesystem;
using namespace aspectgen;

namespace {

struct CommonFlags {
    std::string config;
    std::size_t limit = 0;
    std::string style;
    std::string endpoint;
    std::string model;
    std::string out;
    std::string format;
    std::uint64_t seed = 0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config, "run configuration file")
        ->required();
    cmd->add_option("--limit", flags.limit, "cap on evaluated samples");
    cmd->add_option("--style", flags.style,
                    "prompt style: natural, instruction or sep");
    cmd->add_option("--endpoint", flags.endpoint, "endpoint base URL override");
    cmd->add_option("--model", flags.model, "model id override");
    cmd->add_option("--out", flags.out, "output directory override");
    cmd->add_option("--format", flags.format,
                    "report format: markdown, csv or json");
    cmd->add_option("--seed", flags.seed, "split shuffle seed override");
}

run::CliOverrides overrides_from(const CLI::App* cmd, const CommonFlags& flags) {
    run::CliOverrides o;
    if (cmd->count("--limit")) o.limit = flags.limit;
    if (cmd->count("--style")) o.style = flags.style;
    if (cmd->count("--endpoint")) o.endpoint = flags.endpoint;
    if (cmd->count("--model")) o.model = flags.model;
    if (cmd->count("--out")) o.out = flags.out;
    if (cmd->count("--format")) o.format = flags.format;
    if (cmd->count("--seed")) o.seed = flags.seed;
    return o;
}

int run_mock_server(int port, const std::string& mode, const std::string& text,
                    int fail_count, int fail_status, int delay_ms,
                    const std::string& reply_map_path) {
    gen::MockServer server;
    if (mode == "echo") {
        server.set_mode_echo();
    } else if (mode == "fixed-text") {
        server.set_mode_fixed(text);
    } else if (mode == "fail-n-times") {
        server.set_fail_first(fail_count, fail_status);
    } else if (mode == "delay") {
        server.set_delay(std::chrono::milliseconds(delay_ms));
    } else {
        std::cerr << "error: unknown mock mode \"" << mode << "\"\n";
        return 2;
    }
    if (fail_count > 0 && mode != "fail-n-times")
        server.set_fail_first(fail_count, fail_status);
    if (delay_ms > 0 && mode != "delay")
        server.set_delay(std::chrono::milliseconds(delay_ms));
    if (!reply_map_path.empty()) {
        std::ifstream in(reply_map_path, std::ios::binary);
        if (!in) {
            std::cerr << "error: cannot open reply map " << reply_map_path << "\n";
            return 1;
        }
        std::vector<std::pair<std::string, std::string>> entries;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            line_no++;
            if (line.empty()) continue;
            auto j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object() || !j.contains("match") ||
                !j.contains("reply") || !j["match"].is_string() ||
                !j["reply"].is_string()) {
                std::cerr << "error: " << reply_map_path << ":" << line_no
                          << ": expected {\"match\": ..., \"reply\": ...}\n";
                return 1;
            }
            entries.emplace_back(j["match"].get<std::string>(),
                                 j["reply"].get<std::string>());
        }
        server.set_reply_map(std::move(entries));
    }
    int bound = server.start(port);
    std::cout << "mock server listening on http://127.0.0.1:" << bound
              << std::endl;
    for (;;) std::this_thread::sleep_for(std::chrono::hours(1));
}

void print_counts(const dataset::DatasetCounts& counts) {
    std::cout << "pages: " << counts.pages << "\narticles kept: " << counts.articles
              << "\nrecords: " << counts.records << "\ntrain: " << counts.train
              << "\ndev: " << counts.dev << "\ntest: " << counts.test << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aspect-oriented search explanation toolkit"};
    app.require_subcommand(1);

    CommonFlags flags;
    CLI::App* cmd_build = app.add_subcommand(
        "build-dataset", "stream a dump and write train/dev/test splits");
    CLI::App* cmd_format = app.add_subcommand(
        "format-prompts", "render the test split into model inputs");
    CLI::App* cmd_generate = app.add_subcommand(
        "generate", "send formatted inputs to the endpoint");
    CLI::App* cmd_score =
        app.add_subcommand("score", "score generations against references");
    CLI::App* cmd_report =
        app.add_subcommand("report", "render the results table");
    CLI::App* cmd_run = app.add_subcommand("run", "full pipeline");
    for (CLI::App* cmd : {cmd_build, cmd_format, cmd_generate, cmd_score,
                          cmd_report, cmd_run})
        add_common_flags(cmd, flags);

    CLI::App* cmd_mock =
        app.add_subcommand("mock-server", "serve a scriptable mock endpoint");
    int mock_port = 8080;
    std::string mock_mode = "echo";
    std::string mock_text = "mock reply";
    int mock_fail_count = 0;
    int mock_fail_status = 429;
    int mock_delay_ms = 0;
    std::string mock_reply_map;
    cmd_mock->add_option("--port", mock_port, "port to bind (default 8080)");
    cmd_mock->add_option("--mode", mock_mode,
                         "echo, fixed-text, fail-n-times or delay");
    cmd_mock->add_option("--text", mock_text, "reply for fixed-text mode");
    cmd_mock->add_option("--fail-count", mock_fail_count,
                         "requests to fail before succeeding");
    cmd_mock->add_option("--fail-status", mock_fail_status,
                         "HTTP status for scripted failures");
    cmd_mock->add_option("--delay-ms", mock_delay_ms, "per-request delay");
    cmd_mock->add_option("--reply-map", mock_reply_map,
                         "JSONL of {\"match\",\"reply\"} substring rules");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (app.got_subcommand(cmd_mock))
        return run_mock_server(mock_port, mock_mode, mock_text, mock_fail_count,
                               mock_fail_status, mock_delay_ms, mock_reply_map);

    const CLI::App* active = app.get_subcommands().front();
    if (!fs::exists(flags.config)) {
        std::cerr << "error: config file not found: " << flags.config << "\n";
        return 2;
    }

    try {
        run::RunConfig cfg =
            run::load_run_config(flags.config, overrides_from(active, flags));

        if (app.got_subcommand(cmd_build)) {
            print_counts(run::build_dataset(cfg));
        } else if (app.got_subcommand(cmd_format)) {
            auto records = run::load_eval_records(cfg);
            auto examples = run::format_stage(cfg, records);
            run::write_manifest(cfg);
            std::cout << "formatted " << examples.size() << " inputs into "
                      << cfg.out_dir << "/formatted.jsonl\n";
        } else if (app.got_subcommand(cmd_generate)) {
            auto examples = prompt::read_formatted_jsonl(
                (fs::path(cfg.out_dir) / "formatted.jsonl").string());
            auto generations = run::generate_stage(cfg, examples);
            run::write_manifest(cfg);
            std::size_t failed = 0;
            for (const auto& g : generations)
                if (!g.ok) failed++;
            std::cout << "generated " << generations.size() << " outputs ("
                      << failed << " failed) into " << cfg.out_dir
                      << "/generations.jsonl\n";
        } else if (app.got_subcommand(cmd_score)) {
            auto examples = prompt::read_formatted_jsonl(
                (fs::path(cfg.out_dir) / "formatted.jsonl").string());
            auto generations = run::read_generations_jsonl(
                (fs::path(cfg.out_dir) / "generations.jsonl").string());
            auto scores = run::score_stage(cfg, examples, generations);
            run::report_stage(cfg, scores,
                              gen::aggregate_inference_time(generations));
            run::write_manifest(cfg);
            std::cout << "scored " << scores.size() << " samples into "
                      << cfg.out_dir << "/scores.jsonl\n";
        } else if (app.got_subcommand(cmd_report)) {
            auto rows = run::read_results_json(
                (fs::path(cfg.out_dir) / "results.json").string());
            auto format = run::table_format_from_string(cfg.report_format);
            std::string rendered = run::render_table(rows, format);
            std::string name =
                "results." + run::table_format_extension(format);
            std::ofstream out(fs::path(cfg.out_dir) / name,
                              std::ios::binary | std::ios::trunc);
            out << rendered;
            std::cout << rendered;
        } else if (app.got_subcommand(cmd_run)) {
            run::ResultsRow row = run::run_eval(cfg);
            auto format = run::table_format_from_string(cfg.report_format);
            std::cout << run::render_table({row}, format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
