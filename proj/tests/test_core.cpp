#include <doctest.h>

#include <random>

#include "arena/config.hpp"
#include "arena/participant.hpp"
#include "arena/scoring.hpp"
#include "support.hpp"

using namespace arena;
using nlohmann::json;

TEST_SUITE("config") {
    TEST_CASE("defaults are the standard arena configuration") {
        const ContestConfig c;
        CHECK(c.credit_limit == 20'000'000);
        CHECK(c.score_weights == std::array<Credits, 4>{1, 2, 5, 10});
        CHECK(c.hint_costs == std::array<Credits, 5>{500, 1000, 1000, 1500, 1500});
        CHECK(c.test_cost == 10);
        for (auto v : {Verdict::WA, Verdict::RE, Verdict::CE, Verdict::TLE, Verdict::MLE}) {
            CHECK(c.penalty_schedule.at(v) == 100);
        }
        CHECK(c.total_problems == 12);
        CHECK(c.problem_distribution == std::array<int, 4>{3, 3, 3, 3});
        CHECK(validate_config(c).empty());
    }

    TEST_CASE("json round trip keeps every field") {
        ContestConfig c;
        c.alpha = 2.5;
        c.credit_limit = 123;
        c.score_weights = {1, 10, 100, 1000};
        c.penalty_schedule[Verdict::TLE] = 7;
        json j = c;
        ContestConfig back = j.get<ContestConfig>();
        CHECK(json(back) == j);
        CHECK(back.penalty_schedule.at(Verdict::TLE) == 7);
    }

    TEST_CASE("unknown keys and broken invariants are rejected") {
        CHECK_THROWS(json{{"credit_limt", 5}}.get<ContestConfig>());
        ContestConfig c;
        c.total_problems = 11;
        CHECK_FALSE(validate_config(c).empty());
        c = ContestConfig{};
        c.credit_limit = 0;  // legal: terminated on the first turn
        CHECK(validate_config(c).empty());
        c.credit_limit = -1;
        CHECK_FALSE(validate_config(c).empty());
        c = ContestConfig{};
        c.penalty_schedule.erase(Verdict::WA);
        CHECK_FALSE(validate_config(c).empty());
        CHECK_THROWS(patch_config(ContestConfig{}, {{"alpha", -1.0}}));
    }

    TEST_CASE("patch applies presets and keeps the rest") {
        const auto exp = patch_config(ContestConfig{}, {{"score_weights", "exp"}});
        CHECK(exp.score_weights == std::array<Credits, 4>{1, 10, 100, 1000});
        CHECK(exp.credit_limit == 20'000'000);
        CHECK(weight_preset("flat") == std::array<Credits, 4>{1, 1, 1, 1});
        CHECK_THROWS(weight_preset("steep"));
        const auto lim = patch_config(ContestConfig{}, {{"credit_limit", 10'000'000}});
        CHECK(lim.credit_limit == 10'000'000);
        CHECK(lim.score_weights == ContestConfig{}.score_weights);
    }
}

TEST_SUITE("contest") {
    namespace fs = std::filesystem;

    // Copy of the desk contest that a test may break.
    struct Scratch {
        TempDir dir{"contest-test"};
        fs::path root() const { return dir.path() / "desk"; }
        Scratch() { fs::copy(testing::desk_dir(), root(), fs::copy_options::recursive); }
        json manifest() const { return json::parse(read_file(root() / "contest.json")); }
        void manifest(const json& j) const { write_file(root() / "contest.json", j.dump()); }
    };

    ManifestError::Kind kind_of(const fs::path& dir) {
        try {
            load_contest(dir);
        } catch (const ManifestError& e) {
            return e.kind();
        }
        FAIL("no ManifestError");
        return ManifestError::Kind::Malformed;
    }

    TEST_CASE("desk contest loads") {
        const auto& c = testing::desk().contest;
        CHECK(c.id == "desk-1");
        CHECK(c.problems.size() == 12);
        CHECK(c.qualification_problem == "b1");
        CHECK(c.at("b1").hidden_tests.size() == 18);
        CHECK(c.at("g1").level == DifficultyLevel::Gold);
        CHECK(c.at("b1").time_limit_ms == 1000);
        CHECK(c.find("zz") == nullptr);
        CHECK_THROWS_AS(c.at("zz"), Error);
    }

    TEST_CASE("missing test file") {
        Scratch s;
        fs::remove(s.root() / "problems" / "b2" / "tests" / "03.out");
        CHECK(kind_of(s.root()) == ManifestError::Kind::MissingFile);
        fs::remove(s.root() / "problems" / "b2" / "tests" / "03.in");
        for (const char* ext : {".in", ".out"}) {
            fs::rename(s.root() / "problems" / "b2" / "tests" / (std::string("01") + ext),
                       s.root() / "problems" / "b2" / "tests" / (std::string("99") + ext));
        }
        CHECK(kind_of(s.root()) == ManifestError::Kind::Malformed);
        fs::remove_all(s.root() / "problems" / "b2" / "tests");
        CHECK(kind_of(s.root()) == ManifestError::Kind::MissingFile);
    }

    TEST_CASE("duplicate id") {
        Scratch s;
        auto m = s.manifest();
        m["problems"][1] = "b1";
        s.manifest(m);
        CHECK(kind_of(s.root()) == ManifestError::Kind::DuplicateId);
    }

    TEST_CASE("distribution mismatch") {
        Scratch s;
        auto m = s.manifest();
        m["config"] = {{"problem_distribution", {{"bronze", 4}, {"silver", 2}, {"gold", 3}, {"platinum", 3}}}};
        s.manifest(m);
        CHECK(kind_of(s.root()) == ManifestError::Kind::DistributionMismatch);
    }

    TEST_CASE("malformed limits") {
        Scratch s;
        auto meta = read_file(s.root() / "problems" / "s1" / "meta");
        write_file(s.root() / "problems" / "s1" / "meta", meta + "time_limit_ms=fast\n");
        CHECK(kind_of(s.root()) == ManifestError::Kind::MalformedLimits);
    }

    TEST_CASE("checksum tracks test data") {
        Scratch s;
        const auto before = load_contest(s.root()).at("b3").checksum;
        write_file(s.root() / "problems" / "b3" / "tests" / "01.out", "changed\n");
        CHECK(load_contest(s.root()).at("b3").checksum != before);
    }

    TEST_CASE("output comparison ignores trailing whitespace only") {
        CHECK(outputs_match("1 2\n3\n", "1 2   \r\n3\n\n\n"));
        CHECK_FALSE(outputs_match("1 2\n", "1  2\n"));
        CHECK_FALSE(outputs_match("1\n2\n", "1\n"));
    }
}

TEST_SUITE("ledger") {
    TEST_CASE("inference cost uses published prices") {
        const auto prices = PriceTable::standard();
        // gpt-5: $1.25 / $10 per Mtok => 1.25 and 10 credits per token.
        CHECK(inference_cost(1'000'000, 0, prices.at("gpt-5-2025-08-07")) == 1'250'000);
        CHECK(inference_cost(0, 1'000'000, prices.at("gpt-5-2025-08-07")) == 10'000'000);
        CHECK(inference_cost(2, 0, prices.at("gpt-5-2025-08-07")) == 3);  // 2.5 rounds up
        CHECK(inference_cost(1000, 1000, prices.at("claude-sonnet-4-20250514")) == 18'000);
        CHECK(inference_cost(1'000'000, 1'000'000, prices.at("deepseek-v3")) == 1'370'000);
        CHECK_THROWS_AS(prices.at("nope"), LedgerError);
        CHECK(inference_cost(0, 0, prices.at("glm-4.5")) == 0);
    }

    TEST_CASE("price file matches the built-in table") {
        const auto file = PriceTable::from_json(json::parse(read_file(testing::source_dir() / "data" / "prices.json")));
        const auto builtin = PriceTable::standard();
        REQUIRE(file.entries().size() == builtin.entries().size());
        for (const auto& [id, p] : builtin.entries()) {
            CHECK(file.at(id).input_e4 == p.input_e4);
            CHECK(file.at(id).output_e4 == p.output_e4);
        }
    }

    TEST_CASE("categories and totals") {
        const ContestConfig c;
        CreditLedger l;
        CHECK(charge_hint(l, 3, c) == 1500);
        CHECK(charge_test(l, c) == 10);
        CHECK(add_penalty(l, Verdict::WA, c) == 100);
        CHECK_THROWS_AS(add_penalty(l, Verdict::AC, c), LedgerError);
        CHECK(termination_total(l) == 1510);
        CHECK(consumed_total(l) == 1610);
        CHECK_THROWS_AS(l.append(LedgerCategory::Hint, -1), LedgerError);
        CHECK_THROWS(charge_hint(l, 5, c));
    }

    TEST_CASE("time accrual tops up to the rounded target") {
        ContestConfig c;
        c.alpha = 1.5;
        CreditLedger l;
        CHECK(accrue_time(l, 1.0, c) == 2);  // 1.5 -> 2
        CHECK(accrue_time(l, 1.0, c) == 0);
        CHECK(accrue_time(l, 0.5, c) == 0);
        CHECK(accrue_time(l, 3.0, c) == 3);  // 4.5 -> 5
        CHECK(l.sum(LedgerCategory::Time) == 5);
    }

    TEST_CASE("penalties rank but never terminate") {
        ContestConfig c;
        CreditLedger l;
        l.append(LedgerCategory::Inference, 19'900'000);
        l.append(LedgerCategory::Penalty, 1'000'000);
        CHECK_FALSE(is_terminated(l, c));
        l.append(LedgerCategory::Test, 100'000);
        CHECK(is_terminated(l, c));
    }

    TEST_CASE("random ledgers keep the conservation identities") {
        std::mt19937_64 rng(20240917);
        const auto prices = PriceTable::standard();
        const auto& model = prices.at("gpt-5-2025-08-07");
        int failures = 0;
        for (int trial = 0; trial < 10'000; ++trial) {
            ContestConfig c;
            c.alpha = std::uniform_real_distribution<double>(0, 5)(rng);
            CreditLedger l;
            std::array<std::int64_t, 5> expect{};
            double t = 0;
            const int n = static_cast<int>(rng() % 40);
            for (int i = 0; i < n; ++i) {
                l.set_stamp(i, static_cast<std::int64_t>(t * 1000));
                switch (rng() % 5) {
                    case 0: {
                        const auto in = static_cast<std::int64_t>(rng() % 500'000);
                        const auto out = static_cast<std::int64_t>(rng() % 50'000);
                        expect[0] += charge_inference(l, in, out, model);
                        break;
                    }
                    case 1: expect[1] += charge_hint(l, static_cast<int>(rng() % 5), c); break;
                    case 2: expect[2] += charge_test(l, c); break;
                    case 3:
                        t += std::uniform_real_distribution<double>(0, 30)(rng);
                        expect[3] += accrue_time(l, t, c);
                        break;
                    default: expect[4] += add_penalty(l, kAllVerdicts[1 + rng() % 5], c); break;
                }
            }
            std::array<std::int64_t, 5> fold{};
            bool stamped = true;
            for (std::size_t i = 0; i < l.entries().size(); ++i) {
                const auto& e = l.entries()[i];
                fold[static_cast<std::size_t>(e.category)] += e.amount;
                if (e.amount < 0) stamped = false;
            }
            bool ok = stamped;
            for (auto cat : kAllCategories) {
                const auto k = static_cast<std::size_t>(cat);
                ok = ok && fold[k] == l.sum(cat) && expect[k] == l.sum(cat);
            }
            ok = ok && termination_total(l) == fold[0] + fold[1] + fold[2] + fold[3];
            ok = ok && consumed_total(l) == termination_total(l) + fold[4];
            // time is exactly the rounded target of the latest elapsed time
            ok = ok && fold[3] == static_cast<std::int64_t>(std::floor(c.alpha * t + 0.5));
            if (!ok) ++failures;
        }
        CHECK(failures == 0);
    }
}

TEST_SUITE("scoring") {
    TEST_CASE("score sums weights of solved problems") {
        const auto& d = testing::desk();
        std::set<std::string> all;
        for (const auto& p : d.contest.problems) all.insert(p.id);
        CHECK(score(all, d.contest, d.contest.config) == 54);
        CHECK(score({}, d.contest, d.contest.config) == 0);
        CHECK(score({"b1", "p3"}, d.contest, d.contest.config) == 11);
        auto exp = d.contest.config;
        exp.score_weights = weight_preset("exp");
        CHECK(score(all, d.contest, exp) == 3333);
        CHECK_THROWS(score({"nope"}, d.contest, d.contest.config));
    }

    TEST_CASE("rank orders by score, then consumed, then id") {
        std::vector<LeaderboardRow> rows = {
            {"c", 5, 100, RowStatus::Active},
            {"b", 5, 100, RowStatus::Terminated},
            {"a", 5, 200, RowStatus::Active},
            {"d", 7, 900, RowStatus::Active},
        };
        const auto r = rank(rows);
        CHECK(r[0].participant_id == "d");
        CHECK(r[1].participant_id == "b");
        CHECK(r[2].participant_id == "c");
        CHECK(r[3].participant_id == "a");
    }

    TEST_CASE("withdrawn participants show as terminated") {
        const auto& d = testing::desk();
        ParticipantState p;
        p.id = "w";
        p.finish(ParticipantStatus::Withdrawn);
        CHECK(standing(p, d.contest).status == RowStatus::Terminated);
        p.finish(ParticipantStatus::Active);
        CHECK(p.status == ParticipantStatus::Withdrawn);
    }

    TEST_CASE("rendering") {
        const auto text = render_rankings({{"x", 3, 40, RowStatus::Active}, {"y", 1, 2, RowStatus::Terminated}});
        CHECK(text == "1. x: Score 3, Credit+Penalty: 40 [ACTIVE]\n2. y: Score 1, Credit+Penalty: 2 [TERMINATED]");
    }
}
