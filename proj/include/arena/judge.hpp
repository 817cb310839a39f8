#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "arena/config.hpp"
#include "arena/contest.hpp"
#include "arena/io.hpp"
#include "arena/sandbox.hpp"
#include "arena/types.hpp"

namespace arena {

/// The host has no toolchain for a requested language. A configuration
/// problem, never a compile error.
class ToolchainError : public Error {
public:
    using Error::Error;
};

class TooManyCasesError : public Error {
public:
    using Error::Error;
};

struct Toolchain {
    std::string cxx = "g++";
    std::string python = "python3";
    std::string javac = "javac";
    std::string java = "java";

    bool available(LanguageId language) const;
};

/// A compiled (or staged) submission, reusable across test cases.
class Artifact {
public:
    Artifact(LanguageId language, std::vector<std::string> argv, TempDir dir)
        : language_(language), argv_(std::move(argv)), dir_(std::move(dir)) {}

    LanguageId language() const { return language_; }
    const std::vector<std::string>& argv() const { return argv_; }
    const std::filesystem::path& dir() const { return dir_.path(); }

private:
    LanguageId language_;
    std::vector<std::string> argv_;
    TempDir dir_;
};

struct CompileResult {
    std::shared_ptr<const Artifact> artifact;
    std::string diagnostics;

    bool ok() const { return artifact != nullptr; }
};

struct CaseReport {
    int case_index = 0;
    ExitKind exit = ExitKind::Ok;
    Verdict verdict = Verdict::AC;
    int cpu_ms = 0;
    int wall_ms = 0;
    double peak_mem_mib = 0;
};

struct JudgeResult {
    Verdict verdict = Verdict::CE;
    int passed = 0;
    int total = 0;
    std::vector<CaseReport> per_case;
    std::string diagnostics;
};

/// {verdict, passed, total, per_case}; per_case entries carry case_index and outcome.
nlohmann::json to_json(const JudgeResult& result);

/// Verdict of a single run against an expected output.
Verdict classify(const RunOutcome& outcome, std::string_view expected_output);

class Judge {
public:
    explicit Judge(Toolchain toolchain = {}, SandboxPolicy policy = {});

    /// Throws ToolchainError when the language has no toolchain on this host.
    CompileResult compile(std::string_view source, LanguageId language) const;

    RunOutcome run_case(const Artifact& artifact, std::string_view input, const RunLimits& limits) const;

    /// Runs hidden tests in order and stops at the first failure unless
    /// config.judge.run_all_cases is set. `passed` is always the length of the
    /// passing prefix.
    JudgeResult judge_submission(const Problem& problem, std::string_view source, LanguageId language,
                                 const ContestConfig& config) const;

    /// Raw outcomes for participant-supplied inputs. Throws TooManyCasesError
    /// for an empty list or more than config.judge.max_custom_cases inputs.
    /// Compile failure yields a single crashed outcome carrying the diagnostics
    /// in stderr_data.
    std::vector<RunOutcome> run_custom_tests(std::string_view source, LanguageId language,
                                             const std::vector<std::string>& inputs, const RunLimits& limits,
                                             const ContestConfig& config) const;

    /// Memoize judge_submission by (problem checksum, source hash, language).
    void enable_cache(bool on) { cache_enabled_ = on; }

    static RunLimits limits_for(const Problem& problem, const ContestConfig& config);

    const Toolchain& toolchain() const { return toolchain_; }

private:
    RunOutcome run_with_retry(const std::vector<std::string>& argv, std::string_view input,
                              const std::filesystem::path& workdir, const RunLimits& limits,
                              const SandboxPolicy& policy) const;

    Toolchain toolchain_;
    SandboxPolicy policy_;
    bool cache_enabled_ = false;
    mutable std::mutex cache_mutex_;
    mutable std::map<std::string, JudgeResult> cache_;
};

}  // namespace arena
