#ifndef ASPECTGEN_PROMPT_TEMPLATES_HPP
#define ASPECTGEN_PROMPT_TEMPLATES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "aspectgen/dataset/splits.hpp"

namespace aspectgen::prompt {

// The three input representations models are fed with: plain natural
// language for encoder-decoder models, an instruction prompt with a response
// cue for instruction-tuned decoder-only models, and the legacy
// query-[SEP]-document form for special-token models.
enum class PromptStyle { NaturalSeq2Seq, Instruction, LegacySep };

// Config-file names: natural, instruction, sep.
std::string to_string(PromptStyle style);
PromptStyle style_from_string(const std::string& name);

// Each template must contain {query} and {document} placeholders. The
// defaults are fixed strings so runs stay comparable; any of them can be
// overridden in the run config.
struct TemplateSet {
    std::string natural =
        "Explain how the document answers the query. Query: {query} "
        "Document: {document}";
    std::string instruction =
        "Below is an instruction that describes a task, paired with an input "
        "that provides further context. Write a response that appropriately "
        "completes the request.\n\n### Instruction:\nExplain how the document "
        "answers the query.\n\n### Input:\nQuery: {query}\nDocument: "
        "{document}\n\n### Response:\n";
    std::string sep = "{query} [SEP] {document}";

    const std::string& for_style(PromptStyle style) const;
};

struct FormattedExample {
    std::string input_text;
    std::string target_text;  // the reference explanation, verbatim
    PromptStyle style = PromptStyle::NaturalSeq2Seq;
    std::uint64_t record_id = 0;
};

// Substitutes the record into the style's template. Throws ConfigError
// naming the placeholder when the template lacks {query} or {document}.
FormattedExample format_example(const dataset::ExplanationRecord& record,
                                PromptStyle style, const TemplateSet& templates);

// Element-wise format_example over a split, order preserved.
std::vector<FormattedExample> batch_format(const dataset::DatasetSplit& split,
                                           PromptStyle style,
                                           const TemplateSet& templates);

// One object per line, keys record_id, input_text, target_text, style.
void write_formatted_jsonl(const std::vector<FormattedExample>& examples,
                           const std::string& path);

// Inverse of write_formatted_jsonl, with per-line validation.
std::vector<FormattedExample> read_formatted_jsonl(const std::string& path);

}  // namespace aspectgen::prompt

#endif
