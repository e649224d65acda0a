#include "aspectgen/dataset/dataset_io.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "aspectgen/errors.hpp"

using nlohmann::json;

namespace aspectgen::dataset {

namespace {

json record_to_json(const ExplanationRecord& r) {
    return json{{"record_id", r.record_id},
                {"query", r.query},
                {"document", r.document},
                {"explanation", r.explanation},
                {"page_id", r.page_id},
                {"section_index", r.section_index}};
}

ExplanationRecord record_from_json(const json& j, const std::string& path,
                                   std::size_t line) {
    auto need_string = [&](const char* key) -> std::string {
        auto it = j.find(key);
        if (it == j.end())
            throw JsonlError(path, line, std::string("missing key \"") + key + "\"");
        if (!it->is_string())
            throw JsonlError(path, line,
                             std::string("key \"") + key + "\" must be a string");
        return it->get<std::string>();
    };
    auto need_uint = [&](const char* key) -> std::uint64_t {
        auto it = j.find(key);
        if (it == j.end())
            throw JsonlError(path, line, std::string("missing key \"") + key + "\"");
        if (!it->is_number_unsigned() && !it->is_number_integer())
            throw JsonlError(path, line,
                             std::string("key \"") + key + "\" must be an integer");
        if (it->is_number_integer() && it->get<std::int64_t>() < 0)
            throw JsonlError(path, line,
                             std::string("key \"") + key + "\" must be non-negative");
        return it->get<std::uint64_t>();
    };
    ExplanationRecord r;
    r.record_id = need_uint("record_id");
    r.query = need_string("query");
    r.document = need_string("document");
    r.explanation = need_string("explanation");
    r.page_id = need_uint("page_id");
    r.section_index = static_cast<std::size_t>(need_uint("section_index"));
    if (r.query.empty()) throw JsonlError(path, line, "empty query");
    if (r.document.empty()) throw JsonlError(path, line, "empty document");
    if (r.explanation.empty()) throw JsonlError(path, line, "empty explanation");
    return r;
}

}  // namespace

void write_jsonl(const DatasetSplit& split, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& r : split.records) out << record_to_json(r).dump() << '\n';
    out.flush();
    if (!out) throw IoError("write failed on " + path);
}

DatasetSplit read_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    DatasetSplit split;
    split.name = std::filesystem::path(path).stem().string();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) throw JsonlError(path, line_no, "invalid JSON");
        if (!j.is_object()) throw JsonlError(path, line_no, "line is not an object");
        split.records.push_back(record_from_json(j, path, line_no));
    }
    return split;
}

void write_dataset_card(const std::string& path, const std::string& dump_id,
                        const FilterParams& filters, const SplitConfig& config,
                        const DatasetCounts& counts) {
    json card{
        {"dump", dump_id},
        {"tokenizer", "whitespace runs over cleaned section text"},
        {"filters",
         {{"min_section_tokens", filters.min_tokens},
          {"max_section_tokens", filters.max_tokens},
          {"min_qualifying_sections", filters.min_sections}}},
        {"fractions",
         {{"train", config.train_fraction},
          {"dev", config.dev_fraction},
          {"test", config.test_fraction}}},
        {"seed", config.seed},
        {"shuffle",
         "fisher-yates over query groups; mt19937_64 seeded as given; bounded "
         "draws by rejection sampling"},
        {"counts",
         {{"pages", counts.pages},
          {"qualifying_articles", counts.articles},
          {"records", counts.records},
          {"train", counts.train},
          {"dev", counts.dev},
          {"test", counts.test}}}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << card.dump(2) << '\n';
    if (!out) throw IoError("write failed on " + path);
}

}  // namespace aspectgen::dataset
