#include <doctest.h>

#include "arena/analytics.hpp"
#include "arena/match_log.hpp"
#include "arena/scoring.hpp"
#include "support.hpp"

using namespace arena;
using nlohmann::json;

namespace {

Session make_session(const Contest& contest, std::string id = "p") {
    return Session(std::move(id), contest, testing::desk().services(), std::make_unique<SimulatedClock>(1000));
}

std::string submit(const std::string& problem, const std::string& file, const std::string& lang,
                   std::optional<json> usage = std::nullopt) {
    json m = {{"action", "SUBMIT_SOLUTION"},
              {"parameters",
               {{"problem_id", problem},
                {"source", read_file(testing::desk_dir() / "solutions" / file)},
                {"language", lang}}}};
    if (usage) m["usage"] = *usage;
    return m.dump();
}

}  // namespace

TEST_SUITE("protocol") {
    TEST_CASE("parse accepts well-formed actions") {
        auto p = parse_action(std::string_view(R"({"action":"VIEW_PROBLEM","parameters":{"problem_id":"b1"}})"));
        REQUIRE(std::holds_alternative<ActionRequest>(p));
        CHECK(std::get<ActionRequest>(p).action == ActionKind::ViewProblem);
        p = parse_action(std::string_view(
            R"({"action":"GET_HINT","parameters":{"hint_level":0},"usage":{"input_tokens":5,"output_tokens":1,"model_id":"glm-4.5","idempotency_key":"k1"}})"));
        REQUIRE(std::holds_alternative<ActionRequest>(p));
        const auto& u = std::get<ActionRequest>(p).usage;
        REQUIRE(u);
        CHECK(u->input_tokens == 5);
        CHECK(u->idempotency_key == std::optional<std::string>("k1"));
    }

    TEST_CASE("parse errors carry codes") {
        auto code = [](std::string_view raw) {
            auto p = parse_action(raw);
            REQUIRE(std::holds_alternative<ProtocolError>(p));
            return std::get<ProtocolError>(p).code;
        };
        CHECK(code("not json") == ProtocolErrorCode::Malformed);
        CHECK(code(R"({"action":"DANCE"})") == ProtocolErrorCode::UnknownAction);
        CHECK(code(R"({"action":"VIEW_PROBLEM","parameters":{}})") == ProtocolErrorCode::MissingParameter);
        CHECK(code(R"({"action":"VIEW_PROBLEM","parameters":{"problem_id":3}})") == ProtocolErrorCode::InvalidParameter);
        CHECK(code(R"({"action":"GET_HINT","parameters":{"hint_level":"two"}})") == ProtocolErrorCode::InvalidParameter);
        // usage survives a bad action and is still charged
        auto p = parse_action(std::string_view(R"({"action":"DANCE","usage":{"input_tokens":8,"output_tokens":0}})"));
        REQUIRE(std::holds_alternative<ProtocolError>(p));
        CHECK(std::get<ProtocolError>(p).usage.has_value());
    }

    TEST_CASE("snapshot round trip") {
        const auto& d = testing::desk();
        auto s = make_session(d.contest);
        s.step(R"({"action":"GET_HINT","parameters":{"hint_level":0}})");
        const auto snap = s.render_state({s.standing()});
        const auto back = snapshot_from_json(to_json(snap));
        CHECK(to_json(back) == to_json(snap));
        CHECK(back.consumed_credit == 500);
        CHECK(back.problems.size() == 12);
        CHECK(back.rankings.size() == 1);
    }
}

TEST_SUITE("session") {
    TEST_CASE("view, wrong submit, accepted submit") {
        const auto& d = testing::desk();
        auto s = make_session(d.contest);
        auto r = s.step(R"({"action":"VIEW_PROBLEM","parameters":{"problem_id":"b1"}})");
        CHECK(r.ok);
        CHECK(r.payload["samples"].size() == 2);
        CHECK(r.charged == 0);

        r = s.step(submit("b1", "b1_int32.cpp", "cpp17"));
        CHECK_FALSE(r.ok);
        CHECK(r.payload["verdict"] == "WA");
        CHECK(r.payload["passed"] == 4);
        CHECK(r.payload["penalty"] == 100);
        CHECK(r.charged == 100);

        r = s.step(submit("b1", "b1_ref.cpp", "cpp17"));
        CHECK(r.ok);
        CHECK(r.payload["score_delta"] == 1);
        CHECK(s.standing().score == 1);
        CHECK(s.standing().tiebreak == 100);

        r = s.step(submit("b1", "b1_ref.cpp", "cpp17"));
        REQUIRE(r.error);
        CHECK(r.error->code == "already_solved");
        CHECK(s.turn_index() == 4);
    }

    TEST_CASE("test code charges once per request") {
        const auto& d = testing::desk();
        auto s = make_session(d.contest);
        const json m = {{"action", "TEST_CODE"},
                        {"parameters",
                         {{"source", read_file(testing::desk_dir() / "solutions" / "b1_ref.py")},
                          {"language", "python3"},
                          {"test_cases", {"1 2\n", "3 4\n", "5 6\n"}}}}};
        const auto r = s.step(m.dump());
        CHECK(r.ok);
        CHECK(r.payload["outcomes"].size() == 3);
        CHECK(r.payload["outcomes"][2]["stdout"] == "11\n");
        CHECK(r.charged == 10);
        const json none = {{"action", "TEST_CODE"},
                           {"parameters", {{"source", "x"}, {"language", "python3"}, {"test_cases", json::array()}}}};
        CHECK(s.step(none.dump()).error->code == "empty_test_cases");
    }

    TEST_CASE("usage is charged once per idempotency key") {
        const auto& d = testing::desk();
        auto s = make_session(d.contest);
        Usage u{1000, 100, "gpt-5-2025-08-07", "turn-1"};
        auto ack = s.report_usage(u);
        CHECK(ack.charged == 2250);
        CHECK_FALSE(ack.duplicate);
        ack = s.report_usage(u);
        CHECK(ack.charged == 0);
        CHECK(ack.duplicate);
        CHECK(ack.consumed_credit == 2250);
        // same key inside an action does not charge either
        const auto r = s.step(
            R"({"action":"VIEW_PROBLEM","parameters":{"problem_id":"b2"},"usage":{"input_tokens":1000,"output_tokens":100,"idempotency_key":"turn-1"}})");
        CHECK(r.charged == 0);
        u.idempotency_key.reset();
        CHECK(s.report_usage(u).charged == 2250);
        CHECK(s.report_usage(u).charged == 2250);
    }

    TEST_CASE("unknown model is reported, not charged") {
        const auto& d = testing::desk();
        auto s = make_session(d.contest);
        const auto r = s.step(
            R"({"action":"VIEW_PROBLEM","parameters":{"problem_id":"b2"},"usage":{"input_tokens":1000,"output_tokens":100,"model_id":"mystery-9"}})");
        CHECK(r.ok);
        CHECK(r.charged == 0);
        CHECK(r.payload.contains("usage_warning"));
    }

    TEST_CASE("malformed messages cost a turn and keep their usage charge") {
        const auto& d = testing::desk();
        auto s = make_session(d.contest);
        auto r = s.step(R"({"action":"DANCE","usage":{"input_tokens":8,"output_tokens":0}})");
        REQUIRE(r.error);
        CHECK(r.error->code == "unknown_action");
        CHECK(r.charged == 10);
        CHECK(s.turn_index() == 1);
        r = s.step("{{{");
        CHECK(r.error->code == "malformed");
        CHECK(s.turn_index() == 2);
    }

    TEST_CASE("crossing the limit terminates after the turn applies") {
        const auto& d = testing::desk();
        const auto contest = d.with({{"credit_limit", 1200}});
        auto s = make_session(contest);
        auto r = s.step(R"({"action":"GET_HINT","parameters":{"hint_level":0}})");
        CHECK(s.state().active());
        r = s.step(R"({"action":"GET_HINT","parameters":{"hint_level":2,"hint_knowledge":"graph"}})");
        CHECK(r.ok);  // the hint is still delivered
        CHECK_FALSE(r.payload["content"].get<std::string>().empty());
        CHECK(r.termination_notice);
        CHECK(s.state().status == ParticipantStatus::Terminated);
        r = s.step(R"({"action":"GET_HINT","parameters":{"hint_level":0}})");
        CHECK(r.error->code == "not_active");
        CHECK(s.state().ledger.sum(LedgerCategory::Hint) == 1500);
    }

    TEST_CASE("penalties alone never terminate") {
        const auto& d = testing::desk();
        const auto contest = d.with({{"credit_limit", 150}});
        auto s = make_session(contest);
        s.step(submit("b2", "b2_zero.py", "python3"));
        s.step(submit("b2", "b2_zero.py", "python3"));
        CHECK(s.state().active());
        CHECK(s.standing().tiebreak == 200);
    }

    TEST_CASE("time accrues from the session clock") {
        const auto& d = testing::desk();
        const auto contest = d.with({{"alpha", 2.5}});
        auto s = make_session(contest);
        s.step(R"({"action":"VIEW_PROBLEM","parameters":{"problem_id":"b1"}})");
        s.step(R"({"action":"VIEW_PROBLEM","parameters":{"problem_id":"b2"}})");
        CHECK(s.state().ledger.sum(LedgerCategory::Time) == 5);  // 2 s at 2.5 credits/s
    }

    TEST_CASE("terminate withdraws and turn cap withdraws") {
        const auto& d = testing::desk();
        auto s = make_session(d.contest);
        s.step(R"({"action":"TERMINATE"})");
        CHECK(s.state().status == ParticipantStatus::Withdrawn);
        CHECK(s.standing().status == RowStatus::Terminated);

        const auto capped = d.with({{"max_turns", 2}});
        auto t = make_session(capped);
        t.step(R"({"action":"VIEW_PROBLEM","parameters":{"problem_id":"b1"}})");
        const auto r = t.step(R"({"action":"VIEW_PROBLEM","parameters":{"problem_id":"b1"}})");
        CHECK(r.termination_notice);
        CHECK(t.state().status == ParticipantStatus::Withdrawn);
    }

    TEST_CASE("hidden problems stay hidden") {
        const auto& d = testing::desk();
        Session s("q", d.contest, d.services(), std::make_unique<SimulatedClock>(), {"b1"});
        CHECK(s.step(R"({"action":"VIEW_PROBLEM","parameters":{"problem_id":"b2"}})").error->code == "unknown_problem");
        CHECK(s.render_state({}).problems.size() == 1);
    }
}

TEST_SUITE("match_log") {
    MatchLog sample_log() {
        const auto& d = testing::desk();
        const auto contest = d.with({{"alpha", 1.0}});
        auto s = make_session(contest, "solo");
        MatchLog log;
        log.header.contest_id = contest.id;
        log.header.config = contest.config;
        log.header.participants = {{"solo", "manual"}};
        for (const auto& p : contest.problems) log.header.problems.push_back({p.id, p.level});
        log.header.started_at = "2026-01-01T00:00:00Z";
        const std::vector<std::string> messages = {
            R"({"action":"VIEW_PROBLEM","parameters":{"problem_id":"b1"},"usage":{"input_tokens":100,"output_tokens":10}})",
            submit("b1", "b1_int32.cpp", "cpp17", json{{"input_tokens", 50}, {"output_tokens", 50}}),
            R"({"action":"GET_HINT","parameters":{"hint_level":0}})",
            submit("b1", "b1_ref.cpp", "cpp17"),
            "garbage",
            R"({"action":"TERMINATE"})",
        };
        for (const auto& m : messages) {
            const auto parsed = parse_action(std::string_view(m));
            const auto mark = s.state().ledger.entries().size();
            const auto r = s.step(parsed);
            log.turns.push_back(make_turn_record("solo", &parsed, r, s.state(), mark, s.elapsed_ms(), 7));
        }
        log.footer = MatchFooter{{s.standing()}, false, ""};
        return log;
    }

    TEST_CASE("source code never reaches the log") {
        const auto log = sample_log();
        const auto text = to_jsonl(log);
        CHECK(text.find("int main") == std::string::npos);
        CHECK(log.turns[1].action["parameters"].contains("source_hash"));
        CHECK(log.turns[4].action.is_null());
    }

    TEST_CASE("jsonl round trip") {
        const auto log = sample_log();
        const auto back = parse_log(to_jsonl(log));
        CHECK(to_jsonl(back) == to_jsonl(log));
        REQUIRE(back.footer);
        CHECK(back.footer->leaderboard == log.footer->leaderboard);
        CHECK(back.turns.size() == 6);
    }

    TEST_CASE("replay rebuilds the footer") {
        const auto log = sample_log();
        CHECK(replay_leaderboard(log) == log.footer->leaderboard);
        const auto st = replay_states(log).at("solo");
        CHECK(st.solved == std::set<std::string>{"b1"});
        CHECK(st.status == ParticipantStatus::Withdrawn);
        CHECK(st.category_sums[static_cast<int>(LedgerCategory::Penalty)] == 100);
        CHECK(st.category_sums[static_cast<int>(LedgerCategory::Time)] == 6);
    }

    TEST_CASE("truncated logs parse without a footer") {
        auto text = to_jsonl(sample_log());
        text.pop_back();
        text = text.substr(0, text.rfind('\n') + 1);
        text += "{\"record\":\"tu";  // torn final line
        const auto log = parse_log(text);
        CHECK_FALSE(log.footer);
        CHECK_FALSE(log.complete());
        CHECK_THROWS(parse_log("{\"record\":\"turn\"}\n"));
    }

    TEST_CASE("determinism view drops wall clock fields only") {
        auto a = sample_log();
        auto b = a;
        b.header.started_at = "2030-05-05T05:05:05Z";
        for (auto& t : b.turns) t.wall_ms += 1234;
        CHECK(deterministic_view(a) == deterministic_view(b));
        b.turns[0].t_ms += 1;
        CHECK(deterministic_view(a) != deterministic_view(b));
    }

    TEST_CASE("shipped logs exercise every charge category") {
        std::set<LedgerCategory> seen;
        for (const auto& path : testing::shipped_logs()) {
            const auto log = read_log(path);
            REQUIRE(log.complete());
            CHECK(replay_leaderboard(log) == log.footer->leaderboard);
            for (const auto& [id, st] : replay_states(log)) {
                for (auto cat : kAllCategories) {
                    if (st.category_sums[static_cast<std::size_t>(cat)] > 0) seen.insert(cat);
                }
            }
        }
        for (auto cat : kAllCategories) {
            if (cat == LedgerCategory::Time) continue;
            CHECK_MESSAGE(seen.count(cat) == 1, to_string(cat));
        }
    }
}
