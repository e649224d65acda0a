#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "aspectgen/errors.hpp"
#include "aspectgen/prompt/templates.hpp"
#include "helpers.hpp"

using namespace aspectgen;
using namespace aspectgen::prompt;

namespace {

dataset::ExplanationRecord make_record() {
    dataset::ExplanationRecord r;
    r.record_id = 9;
    r.query = "Badminton";
    r.document = "D";
    r.explanation = "Rules";
    r.page_id = 100;
    r.section_index = 0;
    return r;
}

}  // namespace

TEST_CASE("style names round-trip") {
    CHECK(to_string(PromptStyle::NaturalSeq2Seq) == "natural");
    CHECK(to_string(PromptStyle::Instruction) == "instruction");
    CHECK(to_string(PromptStyle::LegacySep) == "sep");
    CHECK(style_from_string("natural") == PromptStyle::NaturalSeq2Seq);
    CHECK(style_from_string("instruction") == PromptStyle::Instruction);
    CHECK(style_from_string("sep") == PromptStyle::LegacySep);
    CHECK_THROWS_AS(style_from_string("exotic"), ConfigError);
}

TEST_CASE("the sep style renders the query [SEP] document form") {
    auto ex = format_example(make_record(), PromptStyle::LegacySep, TemplateSet{});
    CHECK(ex.input_text == "Badminton [SEP] D");
    CHECK(ex.target_text == "Rules");
    CHECK(ex.style == PromptStyle::LegacySep);
    CHECK(ex.record_id == 9);
}

TEST_CASE("the natural style substitutes into the default sentence") {
    auto ex =
        format_example(make_record(), PromptStyle::NaturalSeq2Seq, TemplateSet{});
    CHECK(ex.input_text ==
          "Explain how the document answers the query. Query: Badminton "
          "Document: D");
    CHECK(ex.target_text == "Rules");
}

TEST_CASE("the instruction style wraps query and document in the prompt frame") {
    auto ex =
        format_example(make_record(), PromptStyle::Instruction, TemplateSet{});
    CHECK(ex.input_text.find("### Instruction:") != std::string::npos);
    CHECK(ex.input_text.find("### Response:") != std::string::npos);
    CHECK(ex.input_text.find("Query: Badminton") != std::string::npos);
    CHECK(ex.input_text.find("Document: D") != std::string::npos);
    CHECK(ex.target_text == "Rules");
}

TEST_CASE("targets are identical across styles") {
    auto rec = make_record();
    TemplateSet t;
    CHECK(format_example(rec, PromptStyle::NaturalSeq2Seq, t).target_text ==
          format_example(rec, PromptStyle::Instruction, t).target_text);
    CHECK(format_example(rec, PromptStyle::LegacySep, t).target_text ==
          format_example(rec, PromptStyle::Instruction, t).target_text);
}

TEST_CASE("a template missing a placeholder is named in the error") {
    TemplateSet t;
    t.natural = "Q={query}";  // no {document}
    try {
        format_example(make_record(), PromptStyle::NaturalSeq2Seq, t);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("{document}") != std::string::npos);
    }

    t.natural = "D={document}";  // no {query}
    try {
        format_example(make_record(), PromptStyle::NaturalSeq2Seq, t);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("{query}") != std::string::npos);
    }
}

TEST_CASE("substitution happens in one pass, no re-expansion") {
    auto rec = make_record();
    rec.query = "{document}";  // hostile query text
    rec.document = "plain";
    TemplateSet t;
    t.natural = "q={query} d={document}";
    auto ex = format_example(rec, PromptStyle::NaturalSeq2Seq, t);
    CHECK(ex.input_text == "q={document} d=plain");
}

TEST_CASE("placeholders may repeat and order is free") {
    auto rec = make_record();
    TemplateSet t;
    t.natural = "{document} then {query} then {query}";
    auto ex = format_example(rec, PromptStyle::NaturalSeq2Seq, t);
    CHECK(ex.input_text == "D then Badminton then Badminton");
}

TEST_CASE("batch_format preserves order and count") {
    dataset::DatasetSplit split;
    split.name = "test";
    for (int i = 0; i < 3; i++) {
        auto r = make_record();
        r.record_id = static_cast<std::uint64_t>(i);
        r.query = "Q" + std::to_string(i);
        split.records.push_back(std::move(r));
    }
    auto batch = batch_format(split, PromptStyle::LegacySep, TemplateSet{});
    REQUIRE(batch.size() == 3);
    for (int i = 0; i < 3; i++) {
        CHECK(batch[i].record_id == static_cast<std::uint64_t>(i));
        CHECK(batch[i].input_text == "Q" + std::to_string(i) + " [SEP] D");
    }

    dataset::DatasetSplit empty;
    CHECK(batch_format(empty, PromptStyle::LegacySep, TemplateSet{}).empty());
}

TEST_CASE("formatted examples round-trip through jsonl") {
    testutil::TempDir tmp;
    dataset::DatasetSplit split;
    split.name = "test";
    auto r = make_record();
    split.records.push_back(r);
    r.record_id = 10;
    r.document = "Unicode Café — „quotes”";
    split.records.push_back(r);

    auto batch = batch_format(split, PromptStyle::Instruction, TemplateSet{});
    std::string path = tmp.file("formatted.jsonl");
    write_formatted_jsonl(batch, path);
    auto back = read_formatted_jsonl(path);
    REQUIRE(back.size() == batch.size());
    for (std::size_t i = 0; i < batch.size(); i++) {
        CHECK(back[i].record_id == batch[i].record_id);
        CHECK(back[i].input_text == batch[i].input_text);
        CHECK(back[i].target_text == batch[i].target_text);
        CHECK(back[i].style == batch[i].style);
    }
}

TEST_CASE("the formatted reader validates each line") {
    testutil::TempDir tmp;
    std::string path = tmp.file("bad.jsonl");

    SUBCASE("missing input_text") {
        testutil::write_file(
            path, R"({"record_id":0,"target_text":"t","style":"natural"})" "\n");
        CHECK_THROWS_AS(read_formatted_jsonl(path), JsonlError);
    }
    SUBCASE("unknown style") {
        testutil::write_file(
            path,
            R"({"record_id":0,"input_text":"i","target_text":"t","style":"weird"})"
            "\n");
        CHECK_THROWS_AS(read_formatted_jsonl(path), Error);
    }
    SUBCASE("line number is reported") {
        testutil::write_file(
            path,
            R"({"record_id":0,"input_text":"i","target_text":"t","style":"sep"})"
            "\nnot json\n");
        try {
            read_formatted_jsonl(path);
            FAIL("expected JsonlError");
        } catch (const JsonlError& e) {
            CHECK(e.line_number() == 2);
        }
    }
}
