#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/contest.hpp"
#include "arena/hints.hpp"
#include "arena/match_log.hpp"
#include "arena/protocol.hpp"

namespace arena {

/// One scripted submission: what a model would have written, and what it
/// would have cost to write it.
struct CannedSubmission {
    std::string source;
    LanguageId language = LanguageId::Cpp17;
    Verdict expected_verdict = Verdict::AC;
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    std::string label;  // file name or "inline"; diagnostics only
};

struct ProblemScript {
    std::vector<CannedSubmission> attempts;
    /// Hints bought before the first attempt, in order.
    std::vector<HintRequest> hints;
};

/// Stand-in for model capability. Sources may be inline or files relative
/// to the book.
///
///   {"model_id": "...", "turn_tokens": {"input": n, "output": n},
///    "problems": {"b1": {"hints": [{"hint_level": 1}],
///                        "attempts": [{"source_file": "...", "language": "cpp17",
///                                      "expected_verdict": "AC",
///                                      "synthetic_tokens": {"input": n, "output": n}}]}}}
///
/// A bare list in place of the problem object is read as its attempts.
struct CannedSolutionBook {
    std::string model_id = "gpt-5-2025-08-07";
    std::int64_t turn_input_tokens = 0;
    std::int64_t turn_output_tokens = 0;
    std::map<std::string, ProblemScript> problems;

    const ProblemScript* find(const std::string& problem_id) const;

    static CannedSolutionBook from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
    static CannedSolutionBook load(const std::filesystem::path& path);
};

enum class StrategyKind {
    GreedyEasiest,
    TerminateNow,
    RandomWalk,
    SpeedySpendthrift,
    FrugalPerfectionist,
    CostAwareStrategist
};

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> parse_strategy_kind(std::string_view text);
bool is_swarm_kind(StrategyKind kind);

struct StrategyProfile {
    StrategyKind kind = StrategyKind::GreedyEasiest;
    /// 0 picks the kind's default: Speedy 8, Frugal 1, CostAware 4, others 1.
    int workers = 0;
    double reserve_fraction = 0.25;
    std::int64_t comm_tokens_per_message = 2000;
    std::uint64_t seed = 0;
    /// Run sample inputs through TEST_CODE before each submission.
    bool test_before_submit = false;
    bool buy_hints = true;
    /// Simulated duration of one attempt (one swarm wave).
    std::int64_t tick_ms = 10 * 60 * 1000;

    int effective_workers() const;
};

/// Parses {"kind": ..., "parameters": {...}}; missing parameters keep their
/// defaults, unknown ones are rejected.
StrategyProfile profile_from_json(const nlohmann::json& j);
nlohmann::json to_json(const StrategyProfile& profile);

/// Mutable state a policy carries between turns.
struct AgentMemory {
    std::map<std::string, std::size_t> next_attempt;
    std::map<std::string, std::size_t> next_hint;
    std::set<std::string> viewed;
    std::map<std::string, std::vector<TestCase>> samples;
    /// Attempt whose generation tokens were already reported (on its TEST_CODE turn).
    std::set<std::pair<std::string, std::size_t>> paid;
    std::set<std::pair<std::string, std::size_t>> tested;
    std::optional<std::pair<std::string, std::size_t>> pending_test;
    std::optional<ActionRequest> last_request;
    std::mt19937_64 rng;
};

AgentMemory make_memory(const StrategyProfile& profile, std::uint64_t match_seed = 0);

/// Folds the previous turn's result into memory (samples seen, sample test
/// outcomes). Safe to call with a null result.
void observe(AgentMemory& memory, const ActionResult* last_result);

/// One policy decision. Swarm kinds act as a single sequential worker here;
/// their parallel behavior lives in simulate_swarm.
ActionRequest step(const StrategyProfile& profile, const StateSnapshot& snapshot, const CannedSolutionBook& book,
                   AgentMemory& memory);

/// Convenience wrapper pairing a profile, a book and its memory.
class ScriptedAgent {
public:
    ScriptedAgent(StrategyProfile profile, std::shared_ptr<const CannedSolutionBook> book,
                  std::uint64_t match_seed = 0);

    ActionRequest act(const StateSnapshot& snapshot, const ActionResult* last_result);
    const StrategyProfile& profile() const { return profile_; }

private:
    StrategyProfile profile_;
    std::shared_ptr<const CannedSolutionBook> book_;
    AgentMemory memory_;
};

struct AgentDefinition {
    std::string name;
    StrategyProfile profile;
    std::shared_ptr<const CannedSolutionBook> book;
};

/// agents.json: {"<name>": {"kind": ..., "parameters": {...}, "book_path": "..."}}
std::map<std::string, AgentDefinition> load_agent_definitions(const std::filesystem::path& path);

struct SwarmOptions {
    std::string participant_id = "swarm";
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> log_path;
};

/// Runs a swarm profile alone on the contest. Each wave advances the
/// simulated clock by one tick and pays comm_tokens_per_message *
/// w * (w - 1) / 2 output tokens of coordination overhead for width w.
MatchLog simulate_swarm(const StrategyProfile& profile, const Contest& contest, const ArenaServices& services,
                        const CannedSolutionBook& book, const SwarmOptions& options = {});

struct SwarmSummary {
    int ticks = 0;
    std::int64_t wall_ms = 0;
    std::int64_t attempt_tokens = 0;
    std::int64_t overhead_tokens = 0;
    std::int64_t total_tokens() const { return attempt_tokens + overhead_tokens; }
    Credits score = 0;
    Credits consumed = 0;
    std::vector<int> wave_widths;
};

SwarmSummary summarize_swarm(const MatchLog& log);

}  // namespace arena
