#include "aspectgen/run/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "aspectgen/errors.hpp"

using nlohmann::json;

namespace aspectgen::run {

namespace {

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

std::string fmt_seconds(double v) {
    return std::to_string(static_cast<long long>(std::llround(v)));
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

struct MetricColumn {
    const char* header;
    double ResultsRow::* field;
};

constexpr MetricColumn kMetricColumns[] = {
    {"METEOR", &ResultsRow::meteor},
    {"ROUGE-1", &ResultsRow::rouge1},
    {"BERTScore", &ResultsRow::bertscore},
    {"BLEU", &ResultsRow::bleu},
};

std::string render_markdown(const std::vector<ResultsRow>& rows) {
    // Column-wise maxima get the bold treatment.
    double best[4];
    for (int c = 0; c < 4; c++) {
        best[c] = rows[0].*(kMetricColumns[c].field);
        for (const auto& r : rows) best[c] = std::max(best[c], r.*(kMetricColumns[c].field));
    }
    std::ostringstream out;
    out << "| Model | Architecture | Parameters | METEOR | ROUGE-1 | "
           "BERTScore | BLEU | Inference time (s) | Samples |\n";
    out << "| --- | --- | --- | --- | --- | --- | --- | --- | --- |\n";
    for (const auto& r : rows) {
        out << "| " << r.label << " | " << r.architecture << " | "
            << r.parameters;
        for (int c = 0; c < 4; c++) {
            double v = r.*(kMetricColumns[c].field);
            std::string cell = fmt4(v);
            if (v == best[c]) cell = "**" + cell + "**";
            out << " | " << cell;
        }
        out << " | " << fmt_seconds(r.inference_time_seconds) << " | "
            << r.sample_count << " |\n";
    }
    return out.str();
}

std::string render_csv(const std::vector<ResultsRow>& rows) {
    std::ostringstream out;
    out << "Model,Architecture,Parameters,METEOR,ROUGE-1,BERTScore,BLEU,"
           "Inference time (s),Samples\n";
    for (const auto& r : rows) {
        out << csv_escape(r.label) << ',' << csv_escape(r.architecture) << ','
            << csv_escape(r.parameters);
        for (const auto& col : kMetricColumns) out << ',' << fmt4(r.*(col.field));
        out << ',' << fmt_seconds(r.inference_time_seconds) << ','
            << r.sample_count << '\n';
    }
    return out.str();
}

json row_to_json(const ResultsRow& r) {
    return json{{"model", r.label},
                {"architecture", r.architecture},
                {"parameters", r.parameters},
                {"meteor", r.meteor},
                {"rouge1", r.rouge1},
                {"bertscore", r.bertscore},
                {"bleu", r.bleu},
                {"inference_time_seconds", r.inference_time_seconds},
                {"samples", r.sample_count}};
}

std::string render_json(const std::vector<ResultsRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(row_to_json(r));
    return arr.dump(2) + "\n";
}

}  // namespace

TableFormat table_format_from_string(const std::string& name) {
    if (name == "markdown" || name == "md") return TableFormat::Markdown;
    if (name == "csv") return TableFormat::Csv;
    if (name == "json") return TableFormat::Json;
    throw ConfigError("unknown table format \"" + name +
                      "\" (expected markdown, csv or json)");
}

std::string table_format_extension(TableFormat format) {
    switch (format) {
        case TableFormat::Markdown:
            return "md";
        case TableFormat::Csv:
            return "csv";
        case TableFormat::Json:
            return "json";
    }
    return "md";
}

std::string render_table(const std::vector<ResultsRow>& rows,
                         TableFormat format) {
    if (rows.empty()) throw Error("cannot render an empty results table");
    switch (format) {
        case TableFormat::Markdown:
            return render_markdown(rows);
        case TableFormat::Csv:
            return render_csv(rows);
        case TableFormat::Json:
            return render_json(rows);
    }
    return "";
}

void write_results_json(const std::vector<ResultsRow>& rows,
                        const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path);
    out << render_table(rows, TableFormat::Json);
    if (!out) throw IoError("write failed on " + path);
}

std::vector<ResultsRow> read_results_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    json arr = json::parse(in, nullptr, false);
    if (arr.is_discarded() || !arr.is_array())
        throw IoError(path + " does not contain a JSON array of result rows");
    std::vector<ResultsRow> rows;
    for (const auto& j : arr) {
        ResultsRow r;
        r.label = j.value("model", "");
        r.architecture = j.value("architecture", "");
        r.parameters = j.value("parameters", "");
        r.meteor = j.value("meteor", 0.0);
        r.rouge1 = j.value("rouge1", 0.0);
        r.bertscore = j.value("bertscore", 0.0);
        r.bleu = j.value("bleu", 0.0);
        r.inference_time_seconds = j.value("inference_time_seconds", 0.0);
        r.sample_count = j.value("samples", std::uint64_t{0});
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace aspectgen::run
