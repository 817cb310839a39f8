#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arena/agents.hpp"
#include "arena/analytics.hpp"
#include "arena/match_log.hpp"
#include "arena/protocol.hpp"

namespace arena {

/// Something that answers a state snapshot with one wire message.
class AgentEndpoint {
public:
    virtual ~AgentEndpoint() = default;
    virtual std::string describe() const = 0;
    /// Raw action message, or nullopt when the agent missed the deadline.
    virtual std::optional<std::string> next_message(const StateSnapshot& snapshot, const ActionResult* last_result,
                                                    std::chrono::milliseconds timeout) = 0;
    /// Final state once the participant is out. Default does nothing.
    virtual void finish(const StateSnapshot&) {}
};

class ScriptedEndpoint : public AgentEndpoint {
public:
    ScriptedEndpoint(std::string name, ScriptedAgent agent) : name_(std::move(name)), agent_(std::move(agent)) {}
    std::string describe() const override { return "scripted:" + name_; }
    std::optional<std::string> next_message(const StateSnapshot& snapshot, const ActionResult* last_result,
                                            std::chrono::milliseconds timeout) override;

private:
    std::string name_;
    ScriptedAgent agent_;
};

/// A child process speaking line-delimited JSON on stdin/stdout.
///
/// Each turn the arena writes {"type":"state","state":{...},"last_result":{...}}
/// and reads one line back. A reply carrying "turn" that does not match the
/// current turn index is a late answer to a skipped turn and is discarded.
class ProcessEndpoint : public AgentEndpoint {
public:
    explicit ProcessEndpoint(std::string command);
    ~ProcessEndpoint() override;
    ProcessEndpoint(const ProcessEndpoint&) = delete;
    ProcessEndpoint& operator=(const ProcessEndpoint&) = delete;

    std::string describe() const override { return "exec:" + command_; }
    std::optional<std::string> next_message(const StateSnapshot& snapshot, const ActionResult* last_result,
                                            std::chrono::milliseconds timeout) override;
    void finish(const StateSnapshot& snapshot) override;

private:
    bool write_line(const std::string& line);
    std::optional<std::string> read_line(std::chrono::steady_clock::time_point deadline);
    void stop();

    std::string command_;
    int pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
};

/// Builds endpoints from "scripted:<name>" and "exec:<command>" specs.
/// Scripted names resolve against agents.json definitions first, then
/// against strategy kind names (with an empty book).
class AgentFactory {
public:
    AgentFactory() = default;
    explicit AgentFactory(std::map<std::string, AgentDefinition> definitions)
        : definitions_(std::move(definitions)) {}

    std::unique_ptr<AgentEndpoint> make(const std::string& spec, std::uint64_t match_seed) const;
    /// Base participant id for a spec: the scripted name, or the command's first word.
    static std::string base_name(const std::string& spec);

    const std::map<std::string, AgentDefinition>& definitions() const { return definitions_; }

private:
    std::map<std::string, AgentDefinition> definitions_;
};

struct Entrant {
    std::string id;
    std::string agent;
    std::unique_ptr<AgentEndpoint> endpoint;
};

/// Participant ids for a list of specs; repeats get "#2", "#3", ...
std::vector<std::string> assign_ids(const std::vector<std::string>& specs);

std::vector<Entrant> make_entrants(const std::vector<std::string>& specs, const AgentFactory& factory,
                                   std::uint64_t match_seed);

struct MatchOptions {
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> log_path;
    /// Simulated time keeps scripted matches reproducible; off means real time.
    bool simulated_clock = true;
    std::int64_t ms_per_turn = 1000;
    std::string kind = "match";
    /// Empty means every problem.
    std::vector<std::string> visible_problems;
};

/// Round-robin over active participants until none remain. Infrastructure
/// failures end the match with an aborted footer instead of throwing.
MatchLog run_match(std::vector<Entrant>& entrants, const Contest& contest, const ArenaServices& services,
                   const MatchOptions& options);

/// The manifest's qualification problem, or the first Bronze problem.
std::string qualification_problem(const Contest& contest);

struct QualificationResult {
    bool qualified = false;
    std::string problem_id;
    MatchLog log;
};

/// One-problem session under the contest's own config.
QualificationResult run_qualification(Entrant& entrant, const Contest& contest, const ArenaServices& services,
                                      MatchOptions options);

struct SeriesSpec {
    std::string label;
    std::vector<std::string> agents;
    int runs = 1;
    std::uint64_t base_seed = 0;
    /// Overrides base_seed + i when non-empty.
    std::vector<std::uint64_t> seeds;
    /// Directory for one log per run; none when empty.
    std::optional<std::filesystem::path> log_dir;
    bool simulated_clock = true;
};

SeriesResult run_series(const SeriesSpec& spec, const Contest& contest, const ArenaServices& services,
                        const AgentFactory& factory, std::vector<MatchLog>* logs = nullptr);

/// "match-YYYYmmddTHHMMSSZ-<seed>.jsonl"
std::string default_log_name(std::uint64_t seed);

struct GridEntry {
    std::string label;
    /// Applied to the manifest config with patch_config.
    nlohmann::json patch = nlohmann::json::object();
};

/// {"contest": dir, "agents_file": path, "agents": [spec, ...], "runs": n, "base_seed": s,
///  "configs": [{"label": ..., "config": {...}}, ...]}; paths are relative to the grid file.
struct AblationGrid {
    std::filesystem::path contest_dir;
    std::filesystem::path agents_file;
    std::vector<std::string> agents;
    int runs = 1;
    std::uint64_t base_seed = 0;
    std::vector<GridEntry> configs;
};

AblationGrid load_grid(const std::filesystem::path& path);

/// One series per grid entry, all with the same agents and seeds.
std::vector<SeriesResult> run_grid(const AblationGrid& grid, const ArenaServices& services,
                                   const std::optional<std::filesystem::path>& log_dir = std::nullopt);

}  // namespace arena
