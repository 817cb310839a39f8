#include <doctest.h>

#include "arena/sandbox.hpp"
#include "support.hpp"

using namespace arena;
using nlohmann::json;

namespace {

std::string probe(const std::string& name) { return read_file(testing::desk_dir() / "probes" / name); }
std::string solution(const std::string& name) { return read_file(testing::desk_dir() / "solutions" / name); }

}  // namespace

TEST_SUITE("sandbox") {
    TEST_CASE("echo through stdin and stdout") {
        TempDir dir("sbx");
        RunLimits limits;
        limits.cpu_ms = 1000;
        const auto out = run_sandboxed({"/bin/cat"}, "hello\n", dir.path(), limits, SandboxPolicy{});
        CHECK(out.exit == ExitKind::Ok);
        CHECK(out.stdout_data == "hello\n");
    }

    TEST_CASE("nonzero exit is a crash") {
        TempDir dir("sbx");
        const auto out = run_sandboxed({"/bin/sh", "-c", "exit 3"}, "", dir.path(), RunLimits{}, SandboxPolicy{});
        CHECK(out.exit == ExitKind::Crashed);
        CHECK(out.exit_code == 3);
    }

    TEST_CASE("output cap truncates") {
        TempDir dir("sbx");
        RunLimits limits;
        limits.output_cap_bytes = 1000;
        const auto out =
            run_sandboxed({"/bin/sh", "-c", "yes | head -c 100000"}, "", dir.path(), limits, SandboxPolicy{});
        CHECK(out.stdout_truncated);
        CHECK(out.stdout_data.size() == 1000);
    }

    TEST_CASE("submissions cannot reach the network, write the box, or read /root") {
        const auto& d = testing::desk();
        const auto& caps = sandbox_capabilities();
        const auto outcomes = d.judge.run_custom_tests(probe("isolation_probe.py"), LanguageId::Python3, {""},
                                                       Judge::limits_for(d.contest.at("b1"), d.contest.config),
                                                       d.contest.config);
        REQUIRE(outcomes.size() == 1);
        const auto& text = outcomes[0].stdout_data;
        INFO(text);
        if (caps.network_namespace) CHECK(text.find("net:blocked") != std::string::npos);
        if (caps.mount_namespace) {
            CHECK(text.find("write:blocked") != std::string::npos);
            CHECK(text.find("root:visible") == std::string::npos);
        }
        if (caps.can_drop_privileges) CHECK(text.find("uid:0") == std::string::npos);
    }
}

TEST_SUITE("judge") {
    TEST_CASE("reference solution is accepted on every case") {
        const auto& d = testing::desk();
        const auto r = d.judge.judge_submission(d.contest.at("s1"), solution("s1_ref.cpp"), LanguageId::Cpp17,
                                                d.contest.config);
        CHECK(r.verdict == Verdict::AC);
        CHECK(r.passed == 12);
        CHECK(r.total == 12);
        CHECK(r.per_case.size() == 12);
    }

    TEST_CASE("judging stops at the first failure unless asked not to") {
        const auto& d = testing::desk();
        auto config = d.contest.config;
        const auto first = d.judge.judge_submission(d.contest.at("b1"), solution("b1_int32.cpp"), LanguageId::Cpp17,
                                                    config);
        CHECK(first.verdict == Verdict::WA);
        CHECK(first.passed == 4);
        CHECK(first.per_case.size() == 5);
        config.judge.run_all_cases = true;
        const auto all = d.judge.judge_submission(d.contest.at("b1"), solution("b1_int32.cpp"), LanguageId::Cpp17,
                                                  config);
        CHECK(all.verdict == Verdict::WA);
        CHECK(all.passed == 4);
        CHECK(all.per_case.size() == 18);
    }

    TEST_CASE("compile errors in both languages") {
        const auto& d = testing::desk();
        for (auto [file, lang] : {std::pair{"broken.cpp", LanguageId::Cpp17}, {"broken.py", LanguageId::Python3}}) {
            const auto r = d.judge.judge_submission(d.contest.at("b1"), probe(file), lang, d.contest.config);
            CHECK(r.verdict == Verdict::CE);
            CHECK(r.passed == 0);
            CHECK_FALSE(r.diagnostics.empty());
        }
    }

    TEST_CASE("runtime errors") {
        const auto& d = testing::desk();
        CHECK(d.judge.judge_submission(d.contest.at("b1"), probe("crash.cpp"), LanguageId::Cpp17, d.contest.config)
                  .verdict == Verdict::RE);
        CHECK(d.judge
                  .judge_submission(d.contest.at("b1"), probe("exit_nonzero.py"), LanguageId::Python3,
                                    d.contest.config)
                  .verdict == Verdict::RE);
    }

    TEST_CASE("classification order") {
        RunOutcome o;
        o.exit = ExitKind::Timeout;
        CHECK(classify(o, "") == Verdict::TLE);
        o.exit = ExitKind::MemoryExceeded;
        CHECK(classify(o, "") == Verdict::MLE);
        o.exit = ExitKind::Crashed;
        CHECK(classify(o, "") == Verdict::RE);
        o.exit = ExitKind::Ok;
        o.stdout_data = "3\n";
        CHECK(classify(o, "3") == Verdict::AC);
        CHECK(classify(o, "4") == Verdict::WA);
    }

    TEST_CASE("custom tests return raw outcomes and respect the case cap") {
        const auto& d = testing::desk();
        const auto limits = Judge::limits_for(d.contest.at("b1"), d.contest.config);
        const auto outs = d.judge.run_custom_tests(solution("b1_ref.py"), LanguageId::Python3, {"1 2\n", "5 -7\n"},
                                                   limits, d.contest.config);
        REQUIRE(outs.size() == 2);
        CHECK(outs[0].stdout_data == "3\n");
        CHECK(outs[1].stdout_data == "-2\n");
        CHECK_THROWS_AS(d.judge.run_custom_tests(solution("b1_ref.py"), LanguageId::Python3, {}, limits,
                                                 d.contest.config),
                        TooManyCasesError);
        CHECK_THROWS_AS(d.judge.run_custom_tests(solution("b1_ref.py"), LanguageId::Python3,
                                                 std::vector<std::string>(11, "1 1\n"), limits, d.contest.config),
                        TooManyCasesError);
    }

    TEST_CASE("missing toolchain is a configuration error") {
        Toolchain t;
        t.javac = "definitely-not-a-compiler";
        Judge j(t);
        const auto& d = testing::desk();
        CHECK_FALSE(t.available(LanguageId::Java));
        CHECK_THROWS_AS(j.judge_submission(d.contest.at("b1"), "class Main {}", LanguageId::Java, d.contest.config),
                        ToolchainError);
    }

    TEST_CASE("limits come from the problem") {
        const auto& d = testing::desk();
        const auto l = Judge::limits_for(d.contest.at("g1"), d.contest.config);
        CHECK(l.cpu_ms == 1000);
        CHECK(l.effective_wall_ms() == 2000);
        CHECK(l.memory_mib == 256);
    }
}
