#ifndef ASPECTGEN_RUN_REPORT_HPP
#define ASPECTGEN_RUN_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace aspectgen::run {

// One results-table row: identity columns as free text, then corpus metric
// means, then the summed inference wall clock and the number of samples.
struct ResultsRow {
    std::string label;
    std::string architecture;
    std::string parameters;
    double meteor = 0.0;
    double rouge1 = 0.0;
    double bertscore = 0.0;
    double bleu = 0.0;
    double inference_time_seconds = 0.0;
    std::uint64_t sample_count = 0;
};

enum class TableFormat { Markdown, Csv, Json };

TableFormat table_format_from_string(const std::string& name);
std::string table_format_extension(TableFormat format);  // md, csv, json

// Renders rows with columns Model | Architecture | Parameters | METEOR |
// ROUGE-1 | BERTScore | BLEU | Inference time (s) | Samples. Metrics print
// with 4 decimals, time as whole seconds. Markdown bolds each metric
// column's maximum. Throws on an empty row list.
std::string render_table(const std::vector<ResultsRow>& rows, TableFormat format);

// results.json is the durable row store; the other formats render from it.
void write_results_json(const std::vector<ResultsRow>& rows,
                        const std::string& path);
std::vector<ResultsRow> read_results_json(const std::string& path);

}  // namespace aspectgen::run

#endif
