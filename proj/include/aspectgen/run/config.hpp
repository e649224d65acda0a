#ifndef ASPECTGEN_RUN_CONFIG_HPP
#define ASPECTGEN_RUN_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aspectgen/dataset/records.hpp"
#include "aspectgen/dataset/splits.hpp"
#include "aspectgen/gen/types.hpp"
#include "aspectgen/metrics/scoring.hpp"
#include "aspectgen/prompt/templates.hpp"

namespace aspectgen::run {

// Flat sectioned config file: [section] headers, key = value lines, `#`
// comments. Values are bare scalars, double-quoted strings (with \" \\ \n
// \t \r escapes) or [comma, separated, lists].
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text,
                                   const std::string& origin = "<string>");

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    std::int64_t get_int(const std::string& section, const std::string& key,
                         std::int64_t fallback) const;
    std::uint64_t get_uint(const std::string& section, const std::string& key,
                           std::uint64_t fallback) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    bool get_bool(const std::string& section, const std::string& key,
                  bool fallback) const;
    std::vector<std::string> get_list(const std::string& section,
                                      const std::string& key) const;

    // Throws ConfigError when a key outside the allowed table appears;
    // catches config typos early.
    void check_known(
        const std::map<std::string, std::vector<std::string>>& allowed) const;

private:
    struct Value {
        bool is_list = false;
        std::vector<std::string> items;  // scalar lives in items[0]
    };
    const Value* find(const std::string& section, const std::string& key) const;
    const Value& require_scalar(const std::string& section,
                                const std::string& key) const;

    std::string origin_;
    std::map<std::string, std::map<std::string, Value>> sections_;
};

// Everything one evaluation run needs, resolved from file + CLI overrides.
struct RunConfig {
    // dataset
    std::string dump_path;  // empty: reuse an already built dataset_dir
    std::string dump_id;
    std::string dataset_dir;  // default: <out_dir>/dataset
    dataset::FilterParams filters;
    dataset::SplitConfig split;

    // prompts
    prompt::PromptStyle style = prompt::PromptStyle::NaturalSeq2Seq;
    prompt::TemplateSet templates;

    // endpoint + decoding
    gen::EndpointConfig endpoint;
    int max_new_tokens = 32;
    double temperature = 0.0;
    std::vector<std::string> stop_sequences;

    // metrics
    metrics::MetricToggles metrics;
    std::string synonyms_path;
    std::string embeddings_path;

    // run identity + outputs
    std::string label = "model";
    std::string architecture = "-";
    std::string parameters = "-";
    std::optional<std::size_t> limit;  // absent: min(1000, split size)
    std::string out_dir = "out";
    std::string report_format = "markdown";
};

struct CliOverrides {
    std::optional<std::size_t> limit;
    std::optional<std::string> style;
    std::optional<std::string> endpoint;
    std::optional<std::string> model;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
};

RunConfig load_run_config(const std::string& path,
                          const CliOverrides& overrides = {});

// Invariant checks that do not need the dataset: enabled BERTScore needs an
// embedding path, the report format must be known, fractions must be sane.
void validate_config(const RunConfig& config);

// Stable serialization used for the manifest and its hash.
std::string effective_config_json(const RunConfig& config);

// FNV-1a 64 over the serialized effective config, as fixed-width hex.
std::string config_hash(const RunConfig& config);

}  // namespace aspectgen::run

#endif
