#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "aspectgen/wiki/articles.hpp"
#include "aspectgen/wiki/dump_reader.hpp"

using namespace aspectgen::wiki;

namespace {

RawPage make_page(std::string title, int ns, bool redirect) {
    RawPage p;
    p.title = std::move(title);
    p.ns = ns;
    p.is_redirect = redirect;
    p.wikitext = "== S ==\nbody";
    return p;
}

std::vector<RawPage> load_pages(const std::string& path) {
    DumpReader reader(path);
    std::vector<RawPage> pages;
    while (auto page = reader.next()) pages.push_back(std::move(*page));
    return pages;
}

}  // namespace

TEST_CASE("only plain namespace-0 pages are articles") {
    CHECK(is_article(make_page("Badminton", 0, false)));
    CHECK(!is_article(make_page("Badminton", 10, false)));  // template ns
    CHECK(!is_article(make_page("Badminton", 0, true)));    // redirect
    CHECK(!is_article(make_page("Badminton (disambiguation)", 0, false)));
    CHECK(is_article(make_page("Disambiguation theory", 0, false)));
}

TEST_CASE("clean_page fills sections with cleaned bodies and counts") {
    RawPage p;
    p.title = "T";
    p.page_id = 7;
    p.wikitext =
        "lead\n"
        "== One ==\n"
        "'''bold''' body with [[a link|link]]\n"
        "== Two ==\n"
        "{{tmpl}} plain";
    CleanArticle art = clean_page(p);
    CHECK(art.title == "T");
    CHECK(art.page_id == 7);
    REQUIRE(art.sections.size() == 2);
    CHECK(art.sections[0].heading == "One");
    CHECK(art.sections[0].body_clean == "bold body with link");
    CHECK(art.sections[0].token_count == 4);
    CHECK(art.sections[1].body_clean == "plain");
    CHECK(art.sections[1].token_count == 1);
}

TEST_CASE("serial and parallel extraction agree field for field") {
    auto pages = load_pages("fixtures/mini-enwiki.xml");
    REQUIRE(pages.size() == 15);

    auto serial = extract_articles_serial(pages);
    auto parallel = extract_articles_parallel(pages);

    REQUIRE(serial.size() == parallel.size());
    CHECK(serial.size() == 12);  // redirects, ns-10 and disambiguation dropped
    for (std::size_t i = 0; i < serial.size(); i++) {
        CAPTURE(i);
        CHECK(serial[i].title == parallel[i].title);
        CHECK(serial[i].page_id == parallel[i].page_id);
        REQUIRE(serial[i].sections.size() == parallel[i].sections.size());
        for (std::size_t j = 0; j < serial[i].sections.size(); j++) {
            CHECK(serial[i].sections[j].heading ==
                  parallel[i].sections[j].heading);
            CHECK(serial[i].sections[j].body_wikitext ==
                  parallel[i].sections[j].body_wikitext);
            CHECK(serial[i].sections[j].body_clean ==
                  parallel[i].sections[j].body_clean);
            CHECK(serial[i].sections[j].token_count ==
                  parallel[i].sections[j].token_count);
        }
    }
}

TEST_CASE("ordering survives the parallel path") {
    auto pages = load_pages("fixtures/mini-enwiki.xml");
    auto articles = extract_articles_parallel(pages);

    // Articles appear in page order.
    std::vector<std::string> titles;
    for (const auto& a : articles) titles.push_back(a.title);
    std::vector<std::string> expected;
    for (const auto& p : pages)
        if (is_article(p)) expected.push_back(p.title);
    CHECK(titles == expected);
}

TEST_CASE("for_each_article streams batches and reports the page count") {
    for (std::size_t batch : {1u, 4u, 100u}) {
        CAPTURE(batch);
        std::vector<std::string> titles;
        std::size_t pages = for_each_article(
            "fixtures/mini-enwiki.xml", batch,
            [&](CleanArticle&& art) { titles.push_back(art.title); });
        CHECK(pages == 15);
        CHECK(titles.size() == 12);
    }
}

TEST_CASE("batch size variations do not change the output") {
    std::vector<std::string> small, large;
    for_each_article("fixtures/mini-enwiki.xml", 2,
                     [&](CleanArticle&& a) { small.push_back(a.title); });
    for_each_article("fixtures/mini-enwiki.xml", 1000,
                     [&](CleanArticle&& a) { large.push_back(a.title); });
    CHECK(small == large);
}
