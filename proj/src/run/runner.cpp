#include "aspectgen/run/runner.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <unordered_map>

#include "aspectgen/dataset/records.hpp"
#include "aspectgen/gen/client.hpp"
#include "aspectgen/metrics/synonyms.hpp"
#include "aspectgen/wiki/articles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace aspectgen::run {

namespace {

template <typename F>
auto stage(const char* name, F&& body) {
    try {
        return body();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

fs::path under(const std::string& dir, const char* file) {
    return fs::path(dir) / file;
}

}  // namespace

dataset::DatasetCounts build_dataset(const RunConfig& config) {
    if (config.dump_path.empty())
        throw ConfigError("no dump configured (dataset.dump)");
    fs::create_directories(config.dataset_dir);

    std::vector<dataset::ExplanationRecord> records;
    std::uint64_t next_record_id = 0;
    std::size_t articles = 0;
    std::size_t pages = wiki::for_each_article(
        config.dump_path, 256, [&](wiki::CleanArticle&& article) {
            auto qualifying = dataset::qualify_article(article, config.filters);
            if (!qualifying) return;
            articles++;
            auto recs =
                dataset::build_records(article, *qualifying, next_record_id);
            records.insert(records.end(), std::make_move_iterator(recs.begin()),
                           std::make_move_iterator(recs.end()));
        });

    dataset::SplitResult splits = dataset::assign_splits(records, config.split);
    dataset::write_jsonl(splits.train, under(config.dataset_dir, "train.jsonl").string());
    dataset::write_jsonl(splits.dev, under(config.dataset_dir, "dev.jsonl").string());
    dataset::write_jsonl(splits.test, under(config.dataset_dir, "test.jsonl").string());

    dataset::DatasetCounts counts;
    counts.pages = pages;
    counts.articles = articles;
    counts.records = records.size();
    counts.train = splits.train.records.size();
    counts.dev = splits.dev.records.size();
    counts.test = splits.test.records.size();
    dataset::write_dataset_card(under(config.dataset_dir, "dataset_card.json").string(),
                                config.dump_id, config.filters, config.split,
                                counts);
    return counts;
}

std::vector<dataset::ExplanationRecord> load_eval_records(const RunConfig& config) {
    fs::path test_path = under(config.dataset_dir, "test.jsonl");
    if (!fs::exists(test_path))
        throw ConfigError("test split not found at " + test_path.string() +
                          " (build the dataset first)");
    dataset::DatasetSplit split = dataset::read_jsonl(test_path.string());
    std::size_t available = split.records.size();
    std::size_t take;
    if (config.limit) {
        if (*config.limit > available)
            throw ConfigError("sample limit " + std::to_string(*config.limit) +
                              " exceeds the test split size " +
                              std::to_string(available));
        take = *config.limit;
    } else {
        take = std::min<std::size_t>(1000, available);
    }
    split.records.resize(take);
    return std::move(split.records);
}

std::vector<prompt::FormattedExample> format_stage(
    const RunConfig& config,
    const std::vector<dataset::ExplanationRecord>& records) {
    dataset::DatasetSplit view;
    view.name = "test";
    view.records = records;
    auto examples = prompt::batch_format(view, config.style, config.templates);
    fs::create_directories(config.out_dir);
    prompt::write_formatted_jsonl(examples,
                                  under(config.out_dir, "formatted.jsonl").string());
    return examples;
}

std::vector<gen::GenerationResult> generate_stage(
    const RunConfig& config,
    const std::vector<prompt::FormattedExample>& examples) {
    std::vector<gen::GenerationRequest> requests;
    requests.reserve(examples.size());
    for (const auto& ex : examples) {
        gen::GenerationRequest req;
        req.record_id = ex.record_id;
        req.input_text = ex.input_text;
        req.max_new_tokens = config.max_new_tokens;
        req.temperature = config.temperature;
        req.stop_sequences = config.stop_sequences;
        requests.push_back(std::move(req));
    }
    auto results = gen::generate_batch(requests, config.endpoint);
    fs::create_directories(config.out_dir);
    write_generations_jsonl(results,
                            under(config.out_dir, "generations.jsonl").string());
    return results;
}

std::vector<metrics::SampleScores> score_stage(
    const RunConfig& config, const std::vector<prompt::FormattedExample>& examples,
    const std::vector<gen::GenerationResult>& generations) {
    std::unordered_map<std::uint64_t, const prompt::FormattedExample*> by_id;
    for (const auto& ex : examples) by_id[ex.record_id] = &ex;

    std::vector<metrics::ScoreInput> inputs;
    inputs.reserve(generations.size());
    for (const auto& g : generations) {
        auto it = by_id.find(g.record_id);
        if (it == by_id.end())
            throw Error("generation for unknown record " +
                        std::to_string(g.record_id));
        metrics::ScoreInput in;
        in.record_id = g.record_id;
        in.candidate = g.output_text;
        in.reference = it->second->target_text;
        in.ok = g.ok;
        inputs.push_back(std::move(in));
    }

    metrics::SynonymTable synonyms;
    if (!config.synonyms_path.empty())
        synonyms = metrics::SynonymTable::load(config.synonyms_path);
    metrics::EmbeddingStore embeddings;
    const metrics::EmbeddingStore* store = nullptr;
    if (config.metrics.bertscore) {
        embeddings = metrics::EmbeddingStore::load(config.embeddings_path);
        store = &embeddings;
    }

    auto scores =
        metrics::score_samples_parallel(inputs, config.metrics, synonyms, store);
    fs::create_directories(config.out_dir);
    metrics::write_scores_jsonl(scores, config.metrics,
                                under(config.out_dir, "scores.jsonl").string());
    return scores;
}

ResultsRow report_stage(const RunConfig& config,
                        const std::vector<metrics::SampleScores>& scores,
                        double inference_time_seconds) {
    metrics::CorpusScores corpus = metrics::corpus_aggregate(scores);
    ResultsRow row;
    row.label = config.label;
    row.architecture = config.architecture;
    row.parameters = config.parameters;
    row.meteor = corpus.meteor;
    row.rouge1 = corpus.rouge1;
    row.bertscore = corpus.bertscore;
    row.bleu = corpus.bleu;
    row.inference_time_seconds = inference_time_seconds;
    row.sample_count = corpus.sample_count;

    fs::create_directories(config.out_dir);
    std::vector<ResultsRow> rows{row};
    write_results_json(rows, under(config.out_dir, "results.json").string());
    for (auto format : {TableFormat::Markdown, TableFormat::Csv}) {
        std::string name = "results." + table_format_extension(format);
        std::ofstream out(under(config.out_dir, name.c_str()),
                          std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + name);
        out << render_table(rows, format);
    }
    return row;
}

void write_manifest(const RunConfig& config) {
    fs::create_directories(config.out_dir);
    json j;
    j["config_hash"] = config_hash(config);
    j["seed"] = config.split.seed;
    j["style"] = prompt::to_string(config.style);
    j["templates"] = {{"natural", config.templates.natural},
                      {"instruction", config.templates.instruction},
                      {"sep", config.templates.sep}};
    j["endpoint"] = {{"base_url", config.endpoint.base_url},
                     {"model", config.endpoint.model_id}};
    j["config"] = json::parse(effective_config_json(config));
    std::ofstream out(under(config.out_dir, "manifest.json"),
                      std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write manifest.json");
    out << j.dump(2) << '\n';
}

void write_generations_jsonl(const std::vector<gen::GenerationResult>& results,
                             const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& r : results) {
        json j;
        j["record_id"] = r.record_id;
        j["output_text"] = r.output_text;
        j["status"] = r.ok ? "ok" : "failed";
        if (!r.ok) j["failure_reason"] = r.failure_reason;
        j["latency_seconds"] = r.latency_seconds;
        j["attempts"] = r.attempts;
        if (r.prompt_tokens) j["prompt_tokens"] = *r.prompt_tokens;
        if (r.completion_tokens) j["completion_tokens"] = *r.completion_tokens;
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failed on " + path);
}

std::vector<gen::GenerationResult> read_generations_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<gen::GenerationResult> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw JsonlError(path, line_no, "invalid JSON");
        if (!j.is_object() || !j.contains("record_id") ||
            !j["record_id"].is_number_unsigned() || !j.contains("output_text") ||
            !j["output_text"].is_string() || !j.contains("status") ||
            !j["status"].is_string())
            throw JsonlError(path, line_no,
                             "expected record_id, output_text, status");
        gen::GenerationResult r;
        r.record_id = j["record_id"].get<std::uint64_t>();
        r.output_text = j["output_text"].get<std::string>();
        r.ok = j["status"].get<std::string>() == "ok";
        if (j.contains("failure_reason") && j["failure_reason"].is_string())
            r.failure_reason = j["failure_reason"].get<std::string>();
        r.latency_seconds = j.value("latency_seconds", 0.0);
        r.attempts = j.value("attempts", 0);
        if (j.contains("prompt_tokens") && j["prompt_tokens"].is_number_unsigned())
            r.prompt_tokens = j["prompt_tokens"].get<std::uint64_t>();
        if (j.contains("completion_tokens") &&
            j["completion_tokens"].is_number_unsigned())
            r.completion_tokens = j["completion_tokens"].get<std::uint64_t>();
        out.push_back(std::move(r));
    }
    return out;
}

ResultsRow run_eval(const RunConfig& config) {
    fs::create_directories(config.out_dir);
    write_manifest(config);

    stage("build-dataset", [&] {
        if (!config.dump_path.empty()) {
            build_dataset(config);
        } else if (!fs::exists(under(config.dataset_dir, "test.jsonl"))) {
            throw ConfigError("no dump configured and no dataset at " +
                              config.dataset_dir);
        }
        return 0;
    });

    auto records =
        stage("format-prompts", [&] { return load_eval_records(config); });
    auto examples =
        stage("format-prompts", [&] { return format_stage(config, records); });
    auto generations =
        stage("generate", [&] { return generate_stage(config, examples); });
    auto scores = stage(
        "score", [&] { return score_stage(config, examples, generations); });
    double inference_time = gen::aggregate_inference_time(generations);
    return stage("report",
                 [&] { return report_stage(config, scores, inference_time); });
}

}  // namespace aspectgen::run
