#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arena/config.hpp"
#include "arena/types.hpp"

namespace arena {

struct TestCase {
    std::string input;
    std::string expected_output;
};

struct Problem {
    std::string id;
    DifficultyLevel level = DifficultyLevel::Bronze;
    std::string title;
    std::string statement;
    std::vector<TestCase> samples;
    std::vector<TestCase> hidden_tests;
    int time_limit_ms = 2000;
    int memory_limit_mib = 256;
    /// FNV-1a over statement, samples, and hidden tests in manifest order.
    std::uint64_t checksum = 0;
    std::filesystem::path dir;
};

/// Immutable after load; safe to share between readers.
struct Contest {
    std::string id;
    std::string name;
    ContestConfig config;
    std::vector<Problem> problems;
    /// Designated easiest Bronze problem used for qualification.
    std::string qualification_problem;
    std::filesystem::path root;

    const Problem* find(std::string_view problem_id) const;
    const Problem& at(std::string_view problem_id) const;
};

class ManifestError : public Error {
public:
    enum class Kind { MissingFile, DuplicateId, DistributionMismatch, MalformedLimits, InvalidConfig, Malformed };

    ManifestError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Loads `<dir>/contest.json` and every problem directory it lists.
///
/// Layout:
///   contest.json                  {"id", "name", "problems": [...], "qualification_problem", "config": {...}}
///   problems/<id>/statement.md
///   problems/<id>/meta            key=value lines: level, time_limit_ms, memory_limit_mib, title
///   problems/<id>/samples/NN.in|out
///   problems/<id>/tests/NN.in|out  (01, 02, ... contiguous)
///
/// `config_override`, when given, replaces the manifest's config (used by
/// ablation runs); the distribution check runs against whichever config wins.
Contest load_contest(const std::filesystem::path& dir,
                     const std::optional<ContestConfig>& config_override = std::nullopt);

Problem load_problem(const std::filesystem::path& dir, const std::string& id);

/// Trailing whitespace on each line and trailing blank lines are ignored;
/// everything else must match byte for byte. Handles CRLF as trailing "\r".
std::string normalize_output(std::string_view text);
bool outputs_match(std::string_view expected, std::string_view actual);

}  // namespace arena
