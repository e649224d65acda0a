#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "aspectgen/wiki/dump_reader.hpp"
#include "aspectgen/wiki/wikitext.hpp"

using aspectgen::wiki::clean_wikitext;

TEST_CASE("internal links keep their visible text") {
    CHECK(clean_wikitext("[[association football|football]] is fun") ==
          "football is fun");
    CHECK(clean_wikitext("[[Badminton]] rules") == "Badminton rules");
    CHECK(clean_wikitext("see [[a|b|c]]") == "see b|c");  // first pipe splits
}

TEST_CASE("templates vanish, including nested ones") {
    CHECK(clean_wikitext("Hello {{cite web|url=x}} world") == "Hello world");
    CHECK(clean_wikitext("{{a|{{b}}}}text") == "text");
    CHECK(clean_wikitext("x {{outer {{inner {{deep}}}} tail}} y") == "x y");
}

TEST_CASE("comments and references are stripped") {
    CHECK(clean_wikitext("a <!-- hidden --> b") == "a b");
    CHECK(clean_wikitext("fact<ref>some citation</ref> stated") ==
          "fact stated");
    CHECK(clean_wikitext("fact<ref name=\"x\"/> stated") == "fact stated");
    CHECK(clean_wikitext("a<ref name=x>multi\nline</ref>b") == "ab");
}

TEST_CASE("tables are removed wholesale") {
    CHECK(clean_wikitext("before\n{| class=\"wikitable\"\n|-\n| cell\n|}\nafter") ==
          "before after");
}

TEST_CASE("media and category links disappear with their nested brackets") {
    CHECK(clean_wikitext("x [[File:pic.jpg|thumb|A [[link]] caption]] y") ==
          "x y");
    CHECK(clean_wikitext("x [[Image:pic.png]] y") == "x y");
    CHECK(clean_wikitext("x [[Category:Sports]] y") == "x y");
}

TEST_CASE("external links keep their label, bare urls vanish") {
    CHECK(clean_wikitext("see [http://example.com the site] now") ==
          "see the site now");
    CHECK(clean_wikitext("see [http://example.com] now") == "see now");
}

TEST_CASE("bold and italic markers are dropped") {
    CHECK(clean_wikitext("'''bold''' and ''italic'' text") ==
          "bold and italic text");
}

TEST_CASE("html tags are stripped, their content kept") {
    CHECK(clean_wikitext("a <small>tiny</small> word") == "a tiny word");
    CHECK(clean_wikitext("line<br/>break") == "linebreak");
}

TEST_CASE("whitespace collapses to single spaces") {
    CHECK(clean_wikitext("  a \n\n b\tc  ") == "a b c");
    CHECK(clean_wikitext("") == "");
    CHECK(clean_wikitext(" \n\t ") == "");
}

TEST_CASE("unbalanced markup degrades to text instead of failing") {
    CHECK_NOTHROW(clean_wikitext("{{never closed"));
    CHECK_NOTHROW(clean_wikitext("[[never closed"));
    CHECK_NOTHROW(clean_wikitext("{| never closed"));
    CHECK_NOTHROW(clean_wikitext("<ref>never closed"));
    // Open template swallows to end of input.
    CHECK(clean_wikitext("keep {{gone forever") == "keep");
}

TEST_CASE("cleaning is idempotent on every fixture page") {
    aspectgen::wiki::DumpReader reader("fixtures/mini-enwiki.xml");
    std::size_t checked = 0;
    while (auto page = reader.next()) {
        std::string once = clean_wikitext(page->wikitext);
        CHECK(clean_wikitext(once) == once);
        checked++;
    }
    CHECK(checked == 15);
}

TEST_CASE("cleaning is idempotent on adversarial snippets") {
    for (const char* s :
         {"[[a|b]] {{t}} '''x''' [http://u l] <!--c--> [[File:f|[[n]]]]",
          "{{{{}}}}", "[[]]", "''''''", "[ ]", "{|\n|}"}) {
        CAPTURE(s);
        std::string once = clean_wikitext(s);
        CHECK(clean_wikitext(once) == once);
    }
}
