#include "aspectgen/run/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "aspectgen/errors.hpp"

using nlohmann::json;

namespace aspectgen::run {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& origin, std::size_t line,
                       const std::string& msg) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + msg);
}

// Cuts an unquoted `#` comment; quotes suspend comment handling.
std::string strip_comment(const std::string& line) {
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); i++) {
        char c = line[i];
        if (in_quote && c == '\\' && i + 1 < line.size()) {
            i++;
            continue;
        }
        if (c == '"') in_quote = !in_quote;
        if (c == '#' && !in_quote) return line.substr(0, i);
    }
    return line;
}

// Parses one scalar starting at s[i]: either a quoted string or a bare run
// ending at a delimiter. Advances i past the scalar.
std::string parse_scalar(const std::string& s, std::size_t& i,
                         const std::string& delims, const std::string& origin,
                         std::size_t line) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) i++;
    if (i < s.size() && s[i] == '"') {
        std::string out;
        i++;
        while (i < s.size() && s[i] != '"') {
            if (s[i] == '\\') {
                i++;
                if (i >= s.size()) fail(origin, line, "dangling escape in string");
                switch (s[i]) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case 'r': out += '\r'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default:
                        fail(origin, line,
                             std::string("unknown escape \\") + s[i]);
                }
            } else {
                out += s[i];
            }
            i++;
        }
        if (i >= s.size()) fail(origin, line, "unterminated string");
        i++;  // closing quote
        return out;
    }
    std::size_t start = i;
    while (i < s.size() && delims.find(s[i]) == std::string::npos) i++;
    std::string out = trim(s.substr(start, i - start));
    if (out.empty()) fail(origin, line, "empty value");
    return out;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

ConfigFile ConfigFile::parse_string(const std::string& text,
                                    const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        line_no++;
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                fail(origin, line_no, "section header missing closing ]");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()) fail(origin, line_no, "empty section name");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, line_no, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) fail(origin, line_no, "empty key");
        if (section.empty())
            fail(origin, line_no, "key \"" + key + "\" appears before any [section]");
        std::string rest = trim(line.substr(eq + 1));
        Value value;
        if (!rest.empty() && rest.front() == '[') {
            value.is_list = true;
            std::size_t i = 1;
            for (;;) {
                while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) i++;
                if (i >= rest.size())
                    fail(origin, line_no, "list missing closing ]");
                if (rest[i] == ']') {
                    i++;
                    break;
                }
                value.items.push_back(
                    parse_scalar(rest, i, ",]", origin, line_no));
                while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) i++;
                if (i < rest.size() && rest[i] == ',') i++;
            }
            while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) i++;
            if (i != rest.size())
                fail(origin, line_no, "unexpected text after list");
        } else {
            if (rest.empty()) fail(origin, line_no, "empty value");
            std::size_t i = 0;
            value.items.push_back(parse_scalar(rest, i, "", origin, line_no));
            while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t')) i++;
            if (i != rest.size())
                fail(origin, line_no, "unexpected text after value");
        }
        cfg.sections_[section][key] = std::move(value);
    }
    return cfg;
}

const ConfigFile::Value* ConfigFile::find(const std::string& section,
                                          const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
}

const ConfigFile::Value& ConfigFile::require_scalar(const std::string& section,
                                                    const std::string& key) const {
    const Value* v = find(section, key);
    if (!v || v->is_list)
        throw ConfigError(origin_ + ": [" + section + "] " + key +
                          " must be a scalar");
    return *v;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key,
                                   const std::string& fallback) const {
    if (!has(section, key)) return fallback;
    return require_scalar(section, key).items[0];
}

std::int64_t ConfigFile::get_int(const std::string& section,
                                 const std::string& key,
                                 std::int64_t fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& s = require_scalar(section, key).items[0];
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError(origin_ + ": [" + section + "] " + key +
                          " is not an integer: \"" + s + "\"");
    return out;
}

std::uint64_t ConfigFile::get_uint(const std::string& section,
                                   const std::string& key,
                                   std::uint64_t fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& s = require_scalar(section, key).items[0];
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || p != s.data() + s.size())
        throw ConfigError(origin_ + ": [" + section + "] " + key +
                          " is not a non-negative integer: \"" + s + "\"");
    return out;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& s = require_scalar(section, key).items[0];
    try {
        std::size_t pos = 0;
        double out = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return out;
    } catch (const std::exception&) {
        throw ConfigError(origin_ + ": [" + section + "] " + key +
                          " is not a number: \"" + s + "\"");
    }
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& s = require_scalar(section, key).items[0];
    if (s == "true") return true;
    if (s == "false") return false;
    throw ConfigError(origin_ + ": [" + section + "] " + key +
                      " must be true or false, got \"" + s + "\"");
}

std::vector<std::string> ConfigFile::get_list(const std::string& section,
                                              const std::string& key) const {
    const Value* v = find(section, key);
    if (!v) return {};
    if (!v->is_list)
        throw ConfigError(origin_ + ": [" + section + "] " + key +
                          " must be a [list]");
    return v->items;
}

void ConfigFile::check_known(
    const std::map<std::string, std::vector<std::string>>& allowed) const {
    for (const auto& [section, keys] : sections_) {
        auto a = allowed.find(section);
        if (a == allowed.end())
            throw ConfigError(origin_ + ": unknown section [" + section + "]");
        for (const auto& [key, _] : keys) {
            if (std::find(a->second.begin(), a->second.end(), key) ==
                a->second.end())
                throw ConfigError(origin_ + ": unknown key \"" + key +
                                  "\" in section [" + section + "]");
        }
    }
}

namespace {

const std::map<std::string, std::vector<std::string>>& known_keys() {
    static const std::map<std::string, std::vector<std::string>> keys = {
        {"dataset",
         {"dump", "dump_id", "dir", "min_tokens", "max_tokens", "min_sections",
          "train_fraction", "dev_fraction", "test_fraction", "seed"}},
        {"prompt",
         {"style", "natural_template", "instruction_template", "sep_template"}},
        {"endpoint",
         {"base_url", "model", "api_key_env", "timeout_ms", "max_concurrent",
          "max_attempts", "base_backoff_ms", "backoff_multiplier"}},
        {"generation", {"max_new_tokens", "temperature", "stop"}},
        {"metrics",
         {"rouge1", "bleu", "meteor", "bertscore", "bleu_max_n", "synonyms",
          "embeddings"}},
        {"run",
         {"label", "architecture", "parameters", "limit", "out_dir", "format"}},
    };
    return keys;
}

}  // namespace

RunConfig load_run_config(const std::string& path, const CliOverrides& overrides) {
    ConfigFile f = ConfigFile::parse_file(path);
    f.check_known(known_keys());

    RunConfig c;
    c.dump_path = f.get_string("dataset", "dump", "");
    c.dump_id = f.get_string("dataset", "dump_id", "");
    c.dataset_dir = f.get_string("dataset", "dir", "");
    c.filters.min_tokens =
        static_cast<std::size_t>(f.get_uint("dataset", "min_tokens", 128));
    c.filters.max_tokens =
        static_cast<std::size_t>(f.get_uint("dataset", "max_tokens", 512));
    c.filters.min_sections =
        static_cast<std::size_t>(f.get_uint("dataset", "min_sections", 3));
    c.split.train_fraction = f.get_double("dataset", "train_fraction", 0.8);
    c.split.dev_fraction = f.get_double("dataset", "dev_fraction", 0.1);
    c.split.test_fraction = f.get_double("dataset", "test_fraction", 0.1);
    c.split.seed = f.get_uint("dataset", "seed", 0);

    c.style = prompt::style_from_string(f.get_string("prompt", "style", "natural"));
    c.templates.natural =
        f.get_string("prompt", "natural_template", c.templates.natural);
    c.templates.instruction =
        f.get_string("prompt", "instruction_template", c.templates.instruction);
    c.templates.sep = f.get_string("prompt", "sep_template", c.templates.sep);

    c.endpoint.base_url =
        f.get_string("endpoint", "base_url", "http://127.0.0.1:8080");
    c.endpoint.model_id = f.get_string("endpoint", "model", "local-model");
    c.endpoint.api_key_env = f.get_string("endpoint", "api_key_env", "");
    c.endpoint.timeout =
        std::chrono::milliseconds(f.get_int("endpoint", "timeout_ms", 60000));
    c.endpoint.max_concurrent =
        static_cast<int>(f.get_int("endpoint", "max_concurrent", 4));
    c.endpoint.retry.max_attempts =
        static_cast<int>(f.get_int("endpoint", "max_attempts", 4));
    c.endpoint.retry.base_backoff =
        std::chrono::milliseconds(f.get_int("endpoint", "base_backoff_ms", 500));
    c.endpoint.retry.multiplier =
        f.get_double("endpoint", "backoff_multiplier", 2.0);

    c.max_new_tokens =
        static_cast<int>(f.get_int("generation", "max_new_tokens", 32));
    c.temperature = f.get_double("generation", "temperature", 0.0);
    c.stop_sequences = f.get_list("generation", "stop");

    c.metrics.rouge1 = f.get_bool("metrics", "rouge1", true);
    c.metrics.bleu = f.get_bool("metrics", "bleu", true);
    c.metrics.meteor = f.get_bool("metrics", "meteor", true);
    c.metrics.bertscore = f.get_bool("metrics", "bertscore", false);
    c.metrics.bleu_max_n =
        static_cast<int>(f.get_int("metrics", "bleu_max_n", 4));
    c.synonyms_path = f.get_string("metrics", "synonyms", "");
    c.embeddings_path = f.get_string("metrics", "embeddings", "");

    c.label = f.get_string("run", "label", "model");
    c.architecture = f.get_string("run", "architecture", "-");
    c.parameters = f.get_string("run", "parameters", "-");
    if (f.has("run", "limit"))
        c.limit = static_cast<std::size_t>(f.get_uint("run", "limit", 0));
    c.out_dir = f.get_string("run", "out_dir", "out");
    c.report_format = f.get_string("run", "format", "markdown");

    if (overrides.limit) c.limit = *overrides.limit;
    if (overrides.style) c.style = prompt::style_from_string(*overrides.style);
    if (overrides.endpoint) c.endpoint.base_url = *overrides.endpoint;
    if (overrides.model) c.endpoint.model_id = *overrides.model;
    if (overrides.out) c.out_dir = *overrides.out;
    if (overrides.format) c.report_format = *overrides.format;
    if (overrides.seed) c.split.seed = *overrides.seed;

    if (c.dataset_dir.empty()) c.dataset_dir = c.out_dir + "/dataset";

    validate_config(c);
    return c;
}

void validate_config(const RunConfig& config) {
    if (config.metrics.bertscore && config.embeddings_path.empty())
        throw ConfigError(
            "bertscore is enabled but no embedding file is configured "
            "(metrics.embeddings)");
    if (config.report_format != "markdown" && config.report_format != "csv" &&
        config.report_format != "json")
        throw ConfigError("unknown report format \"" + config.report_format +
                          "\" (expected markdown, csv or json)");
    if (config.limit && *config.limit == 0)
        throw ConfigError("sample limit must be positive");
    if (config.max_new_tokens < 1)
        throw ConfigError("max_new_tokens must be at least 1");
    if (config.temperature < 0)
        throw ConfigError("temperature must be non-negative");
    if (config.endpoint.max_concurrent < 1)
        throw ConfigError("max_concurrent must be at least 1");
    if (config.endpoint.retry.max_attempts < 1)
        throw ConfigError("max_attempts must be at least 1");
    if (config.metrics.bleu_max_n < 1)
        throw ConfigError("bleu_max_n must be at least 1");
}

std::string effective_config_json(const RunConfig& c) {
    json j;
    j["dataset"] = {{"dump", c.dump_path},
                    {"dump_id", c.dump_id},
                    {"dir", c.dataset_dir},
                    {"min_tokens", c.filters.min_tokens},
                    {"max_tokens", c.filters.max_tokens},
                    {"min_sections", c.filters.min_sections},
                    {"train_fraction", c.split.train_fraction},
                    {"dev_fraction", c.split.dev_fraction},
                    {"test_fraction", c.split.test_fraction},
                    {"seed", c.split.seed}};
    j["prompt"] = {{"style", prompt::to_string(c.style)},
                   {"natural_template", c.templates.natural},
                   {"instruction_template", c.templates.instruction},
                   {"sep_template", c.templates.sep}};
    j["endpoint"] = {{"base_url", c.endpoint.base_url},
                     {"model", c.endpoint.model_id},
                     {"api_key_env", c.endpoint.api_key_env},
                     {"timeout_ms", c.endpoint.timeout.count()},
                     {"max_concurrent", c.endpoint.max_concurrent},
                     {"max_attempts", c.endpoint.retry.max_attempts},
                     {"base_backoff_ms", c.endpoint.retry.base_backoff.count()},
                     {"backoff_multiplier", c.endpoint.retry.multiplier}};
    j["generation"] = {{"max_new_tokens", c.max_new_tokens},
                       {"temperature", c.temperature},
                       {"stop", c.stop_sequences}};
    j["metrics"] = {{"rouge1", c.metrics.rouge1},
                    {"bleu", c.metrics.bleu},
                    {"meteor", c.metrics.meteor},
                    {"bertscore", c.metrics.bertscore},
                    {"bleu_max_n", c.metrics.bleu_max_n},
                    {"synonyms", c.synonyms_path},
                    {"embeddings", c.embeddings_path}};
    j["run"] = {{"label", c.label},
                {"architecture", c.architecture},
                {"parameters", c.parameters},
                {"limit", c.limit ? json(*c.limit) : json(nullptr)},
                {"out_dir", c.out_dir},
                {"format", c.report_format}};
    return j.dump(2);
}

std::string config_hash(const RunConfig& config) {
    std::string text = effective_config_json(config);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char byte : text) {
        h ^= byte;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace aspectgen::run
