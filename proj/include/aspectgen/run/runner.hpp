#ifndef ASPECTGEN_RUN_RUNNER_HPP
#define ASPECTGEN_RUN_RUNNER_HPP

#include <string>
#include <vector>

#include "aspectgen/dataset/dataset_io.hpp"
#include "aspectgen/errors.hpp"
#include "aspectgen/gen/types.hpp"
#include "aspectgen/metrics/scoring.hpp"
#include "aspectgen/prompt/templates.hpp"
#include "aspectgen/run/config.hpp"
#include "aspectgen/run/report.hpp"

namespace aspectgen::run {

// Wraps any stage failure so diagnostics carry the pipeline position.
class StageError : public Error {
public:
    StageError(const std::string& stage, const std::string& detail)
        : Error("[" + stage + "] " + detail), stage_(stage) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

// Streams the dump, qualifies articles, assigns query-grouped splits and
// writes train/dev/test JSONL plus the dataset card into config.dataset_dir.
dataset::DatasetCounts build_dataset(const RunConfig& config);

// Test-split records truncated to the effective sample limit: the explicit
// limit when configured (which must not exceed the split), otherwise
// min(1000, split size).
std::vector<dataset::ExplanationRecord> load_eval_records(const RunConfig& config);

// Stage steps. Each writes its artifact into config.out_dir.
std::vector<prompt::FormattedExample> format_stage(
    const RunConfig& config, const std::vector<dataset::ExplanationRecord>& records);
std::vector<gen::GenerationResult> generate_stage(
    const RunConfig& config, const std::vector<prompt::FormattedExample>& examples);
std::vector<metrics::SampleScores> score_stage(
    const RunConfig& config, const std::vector<prompt::FormattedExample>& examples,
    const std::vector<gen::GenerationResult>& generations);
ResultsRow report_stage(const RunConfig& config,
                        const std::vector<metrics::SampleScores>& scores,
                        double inference_time_seconds);

void write_manifest(const RunConfig& config);

// generations.jsonl round-trip, used by the standalone score subcommand.
void write_generations_jsonl(const std::vector<gen::GenerationResult>& results,
                             const std::string& path);
std::vector<gen::GenerationResult> read_generations_jsonl(const std::string& path);

// The full pipeline: (re)build the dataset when a dump is configured, then
// format, generate, score and report. Fatal errors surface as StageError;
// per-sample generation failures only lower the scores.
ResultsRow run_eval(const RunConfig& config);

}  // namespace aspectgen::run

#endif
