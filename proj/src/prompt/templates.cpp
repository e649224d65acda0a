#include "aspectgen/prompt/templates.hpp"

#include <json.hpp>

#include <fstream>

#include "aspectgen/errors.hpp"

namespace aspectgen::prompt {

std::string to_string(PromptStyle style) {
    switch (style) {
        case PromptStyle::NaturalSeq2Seq:
            return "natural";
        case PromptStyle::Instruction:
            return "instruction";
        case PromptStyle::LegacySep:
            return "sep";
    }
    return "natural";
}

PromptStyle style_from_string(const std::string& name) {
    if (name == "natural") return PromptStyle::NaturalSeq2Seq;
    if (name == "instruction") return PromptStyle::Instruction;
    if (name == "sep") return PromptStyle::LegacySep;
    throw ConfigError("unknown prompt style \"" + name +
                      "\" (expected natural, instruction or sep)");
}

const std::string& TemplateSet::for_style(PromptStyle style) const {
    switch (style) {
        case PromptStyle::NaturalSeq2Seq:
            return natural;
        case PromptStyle::Instruction:
            return instruction;
        case PromptStyle::LegacySep:
            return sep;
    }
    return natural;
}

namespace {

// Substitutes in one pass over the template, so placeholder-looking text
// inside the record values is never re-expanded.
std::string render(const std::string& tmpl, const std::string& query,
                   const std::string& document) {
    std::string out;
    out.reserve(tmpl.size() + query.size() + document.size());
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl.compare(i, 7, "{query}") == 0) {
            out += query;
            i += 7;
        } else if (tmpl.compare(i, 10, "{document}") == 0) {
            out += document;
            i += 10;
        } else {
            out += tmpl[i++];
        }
    }
    return out;
}

}  // namespace

FormattedExample format_example(const dataset::ExplanationRecord& record,
                                PromptStyle style,
                                const TemplateSet& templates) {
    const std::string& tmpl = templates.for_style(style);
    for (const char* ph : {"{query}", "{document}"})
        if (tmpl.find(ph) == std::string::npos)
            throw ConfigError("template for style \"" + to_string(style) +
                              "\" is missing the " + ph + " placeholder");
    FormattedExample ex;
    ex.input_text = render(tmpl, record.query, record.document);
    ex.target_text = record.explanation;
    ex.style = style;
    ex.record_id = record.record_id;
    return ex;
}

std::vector<FormattedExample> batch_format(const dataset::DatasetSplit& split,
                                           PromptStyle style,
                                           const TemplateSet& templates) {
    std::vector<FormattedExample> out;
    out.reserve(split.records.size());
    for (const auto& r : split.records)
        out.push_back(format_example(r, style, templates));
    return out;
}

void write_formatted_jsonl(const std::vector<FormattedExample>& examples,
                           const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& ex : examples) {
        nlohmann::json j{{"record_id", ex.record_id},
                         {"input_text", ex.input_text},
                         {"target_text", ex.target_text},
                         {"style", to_string(ex.style)}};
        out << j.dump() << '\n';
    }
    out.flush();
    if (!out) throw IoError("write failed on " + path);
}

std::vector<FormattedExample> read_formatted_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::vector<FormattedExample> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw JsonlError(path, line_no, "invalid JSON");
        if (!j.is_object() || !j.contains("record_id") ||
            !j["record_id"].is_number_unsigned() || !j.contains("input_text") ||
            !j["input_text"].is_string() || !j.contains("target_text") ||
            !j["target_text"].is_string() || !j.contains("style") ||
            !j["style"].is_string())
            throw JsonlError(path, line_no,
                             "expected record_id, input_text, target_text, style");
        FormattedExample ex;
        ex.record_id = j["record_id"].get<std::uint64_t>();
        ex.input_text = j["input_text"].get<std::string>();
        ex.target_text = j["target_text"].get<std::string>();
        ex.style = style_from_string(j["style"].get<std::string>());
        out.push_back(std::move(ex));
    }
    return out;
}

}  // namespace aspectgen::prompt
