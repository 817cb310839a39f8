#include <doctest.h>

#include <cmath>
#include <random>

#include "arena/bm25.hpp"
#include "retrieval_oracle.hpp"
#include "support.hpp"

using namespace arena;
using nlohmann::json;

TEST_SUITE("bm25") {
    TEST_CASE("tokenizer") {
        CHECK(tokenize("Binary-Search, on a DAG!") == std::vector<std::string>{"binary", "search", "on", "dag"});
        CHECK(tokenize("x y z").empty());
        CHECK(tokenize("café au lait") == std::vector<std::string>{"café", "au", "lait"});
    }

    TEST_CASE("three-document example") {
        // Reference values computed with a direct Python transcription of the formula.
        const auto idx = Bm25Index::build({{"a", "binary search on the answer"},
                                           {"b", "dynamic programming over subsets and binary masks"},
                                           {"c", "shortest path with binary heap binary heap"}});
        CHECK(idx.score("binary heap", 0) == doctest::Approx(0.1461155029242158).epsilon(1e-12));
        CHECK(idx.score("binary heap", 1) == doctest::Approx(0.12801862870883127).epsilon(1e-12));
        CHECK(idx.score("binary heap", 2) == doctest::Approx(1.4881876992841918).epsilon(1e-12));
        const auto hits = idx.search("binary heap", 3);
        REQUIRE(hits.size() == 3);
        CHECK(hits[0].doc_id == "c");
        CHECK(hits[1].doc_id == "a");
        CHECK(hits[2].doc_id == "b");
    }

    TEST_CASE("repeated query terms count once") {
        const auto idx = Bm25Index::build({{"a", "heap heap sort"}, {"b", "merge sort"}});
        CHECK(idx.score("heap", 0) == idx.score("heap heap heap", 0));
    }

    TEST_CASE("ties break by doc id and filters keep statistics") {
        const auto idx = Bm25Index::build({{"z", "graph"}, {"m", "graph"}, {"a", "tree"}});
        auto hits = idx.search("graph", 5);
        REQUIRE(hits.size() == 2);
        CHECK(hits[0].doc_id == "m");
        CHECK(hits[1].doc_id == "z");
        hits = idx.search("graph", 5, [](std::size_t i) { return i != 1; });
        REQUIRE(hits.size() == 1);
        CHECK(hits[0].doc_id == "z");
        CHECK(hits[0].score == idx.score("graph", 0));
    }

    TEST_CASE("empty inputs") {
        CHECK_THROWS_AS(Bm25Index::build({}), Error);
        const auto idx = Bm25Index::build({{"a", "x graph"}});
        CHECK_THROWS_AS(idx.search("x ?", 3), EmptyQueryError);
        CHECK(idx.search("tree", 3).empty());
    }

    TEST_CASE("search equals brute force on random corpora") {
        std::mt19937_64 rng(77);
        int mismatches = 0;
        for (int round = 0; round < 20; ++round) {
            const auto docs = oracle::random_docs(rng, 1 + rng() % 200);
            const auto idx = Bm25Index::build(docs);
            const oracle::BruteBm25 brute(docs);
            for (int q = 0; q < 50; ++q) {
                const auto query = oracle::random_query(rng);
                const std::size_t k = 1 + rng() % 10;
                const auto got = idx.search(query, k);
                const auto want = brute.search(query, k);
                if (got.size() != want.size()) {
                    ++mismatches;
                    continue;
                }
                for (std::size_t i = 0; i < got.size(); ++i) {
                    if (got[i].doc_id != want[i].first || std::abs(got[i].score - want[i].second) > 1e-9) {
                        ++mismatches;
                        break;
                    }
                }
            }
        }
        CHECK(mismatches == 0);
    }
}

TEST_SUITE("hints") {
    HintRequest req(int level, std::optional<std::string> problem = std::nullopt,
                std::optional<std::string> knowledge = std::nullopt,
                std::optional<DifficultyLevel> difficulty = std::nullopt) {
        return HintRequest{level, std::move(problem), std::move(knowledge), difficulty};
    }

    TEST_CASE("each level charges its cost") {
        auto& d = testing::desk();
        CreditLedger l;
        const auto& c = d.contest.config;
        CHECK(get_hint(req(0), d.contest, d.corpora, l, c).cost == 500);
        CHECK(get_hint(req(1, "g1"), d.contest, d.corpora, l, c).cost == 1000);
        CHECK(get_hint(req(2, std::nullopt, "dynamic programming"), d.contest, d.corpora, l, c).cost == 1000);
        CHECK(get_hint(req(3, "p2"), d.contest, d.corpora, l, c).cost == 1500);
        CHECK(get_hint(req(4, std::nullopt, "fenwick tree", DifficultyLevel::Platinum), d.contest, d.corpora, l, c)
                  .cost == 1500);
        CHECK(l.sum(LedgerCategory::Hint) == 5500);
    }

    TEST_CASE("level 0 returns every strategy document") {
        auto& d = testing::desk();
        CreditLedger l;
        const auto r = get_hint(req(0), d.contest, d.corpora, l, d.contest.config);
        for (const auto& doc : d.corpora.strategy()) CHECK(r.content.find(doc.body) != std::string::npos);
    }

    TEST_CASE("level 1 is capped at 1000 characters") {
        auto& d = testing::desk();
        CreditLedger l;
        for (const auto& p : d.contest.problems) {
            try {
                const auto r = get_hint(req(1, p.id), d.contest, d.corpora, l, d.contest.config);
                CHECK(r.content.size() <= 4 * kTextbookExcerptChars);
                CHECK(truncate_utf8(r.content, kTextbookExcerptChars) == r.content);
            } catch (const HintError& e) {
                CHECK(e.kind() == HintError::Kind::EmptyResult);
                CHECK(e.charged() == 1000);
            }
        }
        CHECK(truncate_utf8("héllo", 2) == "hé");
    }

    TEST_CASE("level 2 finds the matching section") {
        auto& d = testing::desk();
        CreditLedger l;
        const auto r = get_hint(req(2, std::nullopt, "shortest path"), d.contest, d.corpora, l, d.contest.config);
        CHECK(r.content.find("Dijkstra") != std::string::npos);
    }

    TEST_CASE("level 3 skips the live contest's own problems") {
        auto& d = testing::desk();
        CreditLedger l;
        for (const auto& p : d.contest.problems) {
            try {
                const auto r = get_hint(req(3, p.id), d.contest, d.corpora, l, d.contest.config);
                CHECK(r.source_doc_id.rfind("lib-desk-", 0) != 0);
            } catch (const HintError& e) {
                CHECK(e.kind() == HintError::Kind::EmptyResult);
            }
        }
    }

    TEST_CASE("level 4 needs both tags") {
        auto& d = testing::desk();
        CreditLedger l;
        const auto r = get_hint(req(4, std::nullopt, "Fenwick Tree ", DifficultyLevel::Platinum), d.contest,
                                d.corpora, l, d.contest.config);
        bool tagged = false;
        for (const auto& doc : d.corpora.library()) {
            if (doc.doc_id == r.source_doc_id) {
                CHECK(doc.difficulty == DifficultyLevel::Platinum);
                for (const auto& k : doc.knowledge) tagged = tagged || k == "fenwick tree";
            }
        }
        CHECK(tagged);
        CHECK_THROWS_AS(get_hint(req(4, std::nullopt, "fenwick tree", DifficultyLevel::Bronze), d.contest, d.corpora,
                                 l, d.contest.config),
                        HintError);
    }

    TEST_CASE("bad parameters are rejected before any charge") {
        auto& d = testing::desk();
        CreditLedger l;
        CHECK_THROWS_AS(get_hint(req(5), d.contest, d.corpora, l, d.contest.config), HintError);
        CHECK_THROWS_AS(get_hint(req(1), d.contest, d.corpora, l, d.contest.config), HintError);
        CHECK_THROWS_AS(get_hint(req(1, "zz"), d.contest, d.corpora, l, d.contest.config), HintError);
        CHECK_THROWS_AS(get_hint(req(2), d.contest, d.corpora, l, d.contest.config), HintError);
        CHECK_THROWS_AS(get_hint(req(4, std::nullopt, "graph"), d.contest, d.corpora, l, d.contest.config),
                        HintError);
        CHECK(l.entries().empty());
    }

    TEST_CASE("empty retrieval still charges") {
        auto& d = testing::desk();
        CreditLedger l;
        try {
            get_hint(req(2, std::nullopt, "zzzz qqqq"), d.contest, d.corpora, l, d.contest.config);
            FAIL("expected an empty result");
        } catch (const HintError& e) {
            CHECK(e.kind() == HintError::Kind::EmptyResult);
            CHECK(e.charged() == 1000);
        }
        CHECK(l.sum(LedgerCategory::Hint) == 1000);
    }

    TEST_CASE("lexicon extraction keeps order of first occurrence") {
        const Lexicon lex({"binary search", "search", "dynamic programming", "graph"});
        CHECK(lex.extract_terms("Use a graph, then binary search the answer.") ==
              std::vector<std::string>{"graph", "binary search", "search"});
    }

    TEST_CASE("corpus schema is validated") {
        CHECK_THROWS(json{{"doc_id", "x"}, {"kind", "library_problem"}, {"title", "t"}, {"body", ""}}.get<CorpusDoc>());
        CHECK_THROWS(json{{"doc_id", "x"}, {"kind", "poem"}, {"title", "t"}, {"body", "b"}}.get<CorpusDoc>());
    }

    TEST_CASE("level 3 exclusion holds on randomized corpora") {
        std::mt19937_64 rng(4242);
        const auto& d = testing::desk();
        CHECK(oracle::level3_violations(rng, d.contest, 200) == 0);
    }
}
