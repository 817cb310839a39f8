#include "arena/judge.hpp"

#include <sys/stat.h>

#include "arena/hash.hpp"

namespace arena {

namespace fs = std::filesystem;
using nlohmann::json;

bool Toolchain::available(LanguageId language) const {
    switch (language) {
        case LanguageId::Cpp17: return !find_program(cxx).empty();
        case LanguageId::Python3: return !find_program(python).empty();
        case LanguageId::Java: return !find_program(javac).empty() && !find_program(java).empty();
    }
    return false;
}

json to_json(const JudgeResult& result) {
    json cases = json::array();
    for (const auto& c : result.per_case) {
        cases.push_back({{"case_index", c.case_index},
                         {"outcome",
                          {{"exit", to_string(c.exit)},
                           {"verdict", to_string(c.verdict)},
                           {"cpu_ms", c.cpu_ms},
                           {"wall_ms", c.wall_ms},
                           {"peak_mem_mib", c.peak_mem_mib}}}});
    }
    return json{{"verdict", to_string(result.verdict)},
                {"passed", result.passed},
                {"total", result.total},
                {"per_case", cases}};
}

Verdict classify(const RunOutcome& outcome, std::string_view expected_output) {
    switch (outcome.exit) {
        case ExitKind::Timeout: return Verdict::TLE;
        case ExitKind::MemoryExceeded: return Verdict::MLE;
        case ExitKind::Crashed: return Verdict::RE;
        case ExitKind::Ok: break;
    }
    if (outcome.stdout_truncated) return Verdict::WA;
    return outputs_match(expected_output, outcome.stdout_data) ? Verdict::AC : Verdict::WA;
}

Judge::Judge(Toolchain toolchain, SandboxPolicy policy)
    : toolchain_(std::move(toolchain)), policy_(std::move(policy)) {}

RunLimits Judge::limits_for(const Problem& problem, const ContestConfig& config) {
    RunLimits limits;
    limits.cpu_ms = problem.time_limit_ms;
    limits.memory_mib = problem.memory_limit_mib;
    limits.output_cap_bytes = config.judge.output_cap_bytes;
    return limits;
}

CompileResult Judge::compile(std::string_view source, LanguageId language) const {
    if (!toolchain_.available(language)) {
        throw ToolchainError("no toolchain for " + std::string(to_string(language)) + " on this host");
    }
    TempDir dir("arena-judge");
    ::chmod(dir.path().c_str(), 0755);

    RunLimits compile_limits;
    compile_limits.cpu_ms = 60'000;
    compile_limits.wall_ms = 120'000;
    compile_limits.memory_mib = 4096;
    compile_limits.limit_address_space = false;
    compile_limits.output_cap_bytes = 1 << 20;

    std::vector<std::string> compile_argv;
    std::vector<std::string> run_argv;
    fs::path source_path;
    switch (language) {
        case LanguageId::Cpp17:
            source_path = dir.path() / "main.cpp";
            compile_argv = {toolchain_.cxx, "-std=c++17", "-O2", "-pipe", "-o", "main", "main.cpp"};
            run_argv = {"./main"};
            break;
        case LanguageId::Python3:
            source_path = dir.path() / "main.py";
            // Syntax check only; no bytecode is written.
            compile_argv = {toolchain_.python, "-c",
                            "import sys; compile(open(sys.argv[1], 'rb').read(), sys.argv[1], 'exec')",
                            "main.py"};
            run_argv = {find_program(toolchain_.python).string(), "-S", "main.py"};
            break;
        case LanguageId::Java:
            source_path = dir.path() / "Main.java";
            compile_argv = {toolchain_.javac, "-encoding", "UTF-8", "Main.java"};
            run_argv = {find_program(toolchain_.java).string(), "-Xss64m", "-cp", ".", "Main"};
            break;
    }
    write_file(source_path, source);
    ::chmod(source_path.c_str(), 0644);

    auto outcome = run_with_retry(compile_argv, {}, dir.path(), compile_limits, SandboxPolicy::trusted());
    if (outcome.exit != ExitKind::Ok) {
        auto diagnostics = outcome.stderr_data.empty() ? outcome.stdout_data : outcome.stderr_data;
        if (outcome.exit == ExitKind::Timeout) diagnostics += "\ncompilation timed out";
        return {nullptr, std::move(diagnostics)};
    }
    for (const auto& entry : fs::directory_iterator(dir.path())) {
        ::chmod(entry.path().c_str(), entry.path().filename() == "main" ? 0755 : 0644);
    }
    return {std::make_shared<const Artifact>(language, std::move(run_argv), std::move(dir)),
            outcome.stderr_data};
}

RunOutcome Judge::run_with_retry(const std::vector<std::string>& argv, std::string_view input,
                                 const fs::path& workdir, const RunLimits& limits,
                                 const SandboxPolicy& policy) const {
    try {
        return run_sandboxed(argv, input, workdir, limits, policy);
    } catch (const SandboxError&) {
        return run_sandboxed(argv, input, workdir, limits, policy);
    }
}

RunOutcome Judge::run_case(const Artifact& artifact, std::string_view input, const RunLimits& limits) const {
    auto effective = limits;
    if (artifact.language() == LanguageId::Java) effective.limit_address_space = false;
    return run_with_retry(artifact.argv(), input, artifact.dir(), effective, policy_);
}

JudgeResult Judge::judge_submission(const Problem& problem, std::string_view source, LanguageId language,
                                    const ContestConfig& config) const {
    std::string key;
    if (cache_enabled_) {
        key = hex64(problem.checksum) + ":" + hex64(fnv1a(source)) + ":" + std::string(to_string(language)) +
              (config.judge.run_all_cases ? ":all" : "");
        std::lock_guard lock(cache_mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }

    JudgeResult result;
    result.total = static_cast<int>(problem.hidden_tests.size());
    auto compiled = compile(source, language);
    if (!compiled.ok()) {
        result.verdict = Verdict::CE;
        result.passed = 0;
        result.diagnostics = std::move(compiled.diagnostics);
    } else {
        const auto limits = limits_for(problem, config);
        std::optional<Verdict> first_failure;
        for (std::size_t i = 0; i < problem.hidden_tests.size(); ++i) {
            const auto& tc = problem.hidden_tests[i];
            const auto outcome = run_case(*compiled.artifact, tc.input, limits);
            CaseReport report;
            report.case_index = static_cast<int>(i) + 1;
            report.exit = outcome.exit;
            report.verdict = classify(outcome, tc.expected_output);
            report.cpu_ms = outcome.cpu_ms;
            report.wall_ms = outcome.wall_ms;
            report.peak_mem_mib = outcome.peak_mem_mib;
            result.per_case.push_back(report);
            if (report.verdict != Verdict::AC && !first_failure) {
                first_failure = report.verdict;
                result.passed = static_cast<int>(i);
                if (!config.judge.run_all_cases) break;
            }
        }
        if (first_failure) {
            result.verdict = *first_failure;
        } else {
            result.verdict = Verdict::AC;
            result.passed = result.total;
        }
    }

    if (cache_enabled_) {
        std::lock_guard lock(cache_mutex_);
        cache_.emplace(key, result);
    }
    return result;
}

std::vector<RunOutcome> Judge::run_custom_tests(std::string_view source, LanguageId language,
                                                const std::vector<std::string>& inputs, const RunLimits& limits,
                                                const ContestConfig& config) const {
    if (inputs.empty()) throw TooManyCasesError("at least one custom test case is required");
    if (inputs.size() > config.judge.max_custom_cases) {
        throw TooManyCasesError("at most " + std::to_string(config.judge.max_custom_cases) +
                                " custom test cases per request");
    }
    auto compiled = compile(source, language);
    if (!compiled.ok()) {
        RunOutcome failed;
        failed.exit = ExitKind::Crashed;
        failed.exit_code = 1;
        failed.stderr_data = compiled.diagnostics;
        return {failed};
    }
    std::vector<RunOutcome> outcomes;
    outcomes.reserve(inputs.size());
    for (const auto& input : inputs) outcomes.push_back(run_case(*compiled.artifact, input, limits));
    return outcomes;
}

}  // namespace arena
