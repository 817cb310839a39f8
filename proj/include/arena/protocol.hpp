#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "arena/contest.hpp"
#include "arena/hints.hpp"
#include "arena/judge.hpp"
#include "arena/ledger.hpp"
#include "arena/participant.hpp"
#include "arena/scoring.hpp"

namespace arena {

enum class ActionKind { ViewProblem, GetHint, SubmitSolution, TestCode, Terminate };

std::string_view to_string(ActionKind kind);
std::optional<ActionKind> parse_action_kind(std::string_view text);

/// Token usage the client reports alongside a turn.
struct Usage {
    std::int64_t input_tokens = 0;
    std::int64_t output_tokens = 0;
    std::string model_id;
    std::optional<std::string> idempotency_key;
};

nlohmann::json to_json(const Usage& usage);

struct ActionRequest {
    ActionKind action = ActionKind::Terminate;
    nlohmann::json parameters = nlohmann::json::object();
    std::optional<Usage> usage;
};

/// {"action": ..., "parameters": {...}} plus "usage" when present.
nlohmann::json to_json(const ActionRequest& request);

enum class ProtocolErrorCode { Malformed, UnknownAction, MissingParameter, InvalidParameter };

std::string_view to_string(ProtocolErrorCode code);

struct ProtocolError {
    ProtocolErrorCode code = ProtocolErrorCode::Malformed;
    std::string message;
    /// Usage parsed from an otherwise invalid message; still charged.
    std::optional<Usage> usage;
};

using ParsedAction = std::variant<ActionRequest, ProtocolError>;

/// Parses one wire message. Structural validation covers the action name and
/// the presence and type of each parameter the action requires.
ParsedAction parse_action(std::string_view raw);
ParsedAction parse_action(const nlohmann::json& message);

struct ErrorInfo {
    std::string code;
    std::string message;
};

struct ActionResult {
    bool ok = false;
    std::optional<ActionKind> action;
    nlohmann::json payload = nlohmann::json::object();
    /// Sum of the ledger entries this turn wrote.
    Credits charged = 0;
    std::optional<ErrorInfo> error;
    std::optional<std::string> termination_notice;
    int turn_index = 0;
};

nlohmann::json to_json(const ActionResult& result);

struct ProblemListing {
    std::string id;
    DifficultyLevel level;
};

struct StateSnapshot {
    int turn_index = 0;
    // Competition rules
    Credits credit_limit = 0;
    std::array<Credits, 4> score_weights{};
    std::array<Credits, 5> hint_costs{};
    Credits test_cost = 0;
    std::map<Verdict, Credits> penalties;
    double alpha = 0;
    std::vector<std::string> languages;
    // Your status
    std::string name;
    Credits consumed_credit = 0;
    Credits termination_credit = 0;
    std::vector<std::string> solved;
    Credits score = 0;
    Credits penalty = 0;
    ParticipantStatus status = ParticipantStatus::Active;
    // Available problems and rankings
    std::vector<ProblemListing> problems;
    std::vector<LeaderboardRow> rankings;
};

nlohmann::json to_json(const StateSnapshot& snapshot);
StateSnapshot snapshot_from_json(const nlohmann::json& j);

/// Match time source. Simulated clocks make time accrual reproducible.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::int64_t elapsed_ms() const = 0;
    /// Called once per completed turn.
    virtual void on_turn() {}
};

class SteadyClock : public Clock {
public:
    SteadyClock() : start_(std::chrono::steady_clock::now()) {}
    std::int64_t elapsed_ms() const override;

private:
    std::chrono::steady_clock::time_point start_;
};

/// Advances a fixed step every turn; `advance` adds arbitrary time.
class SimulatedClock : public Clock {
public:
    explicit SimulatedClock(std::int64_t ms_per_turn = 1000) : step_(ms_per_turn) {}
    std::int64_t elapsed_ms() const override { return now_; }
    void on_turn() override { now_ += step_; }
    void advance(std::int64_t ms) { now_ += ms; }

private:
    std::int64_t step_;
    std::int64_t now_ = 0;
};

struct UsageAck {
    Credits charged = 0;
    Credits consumed_credit = 0;
    bool duplicate = false;
};

/// Everything a session needs that outlives it and is shared read-only.
struct ArenaServices {
    const Judge* judge = nullptr;
    const Corpora* corpora = nullptr;
    const PriceTable* prices = nullptr;
    /// Model used when a usage report omits model_id.
    std::string default_model;
};

/// One participant's turn loop state. Single writer: the owner calls `step`.
class Session {
public:
    Session(std::string participant_id, const Contest& contest, ArenaServices services,
            std::unique_ptr<Clock> clock, std::vector<std::string> visible_problems = {});

    /// Parses and applies one wire message as a full turn.
    ActionResult step(std::string_view raw_message);
    ActionResult step(const ParsedAction& parsed);

    /// Charges a usage report outside of an action. Duplicate idempotency keys
    /// are acknowledged without a second charge.
    UsageAck report_usage(const Usage& usage);

    /// Records a turn in which the agent produced nothing (response timeout).
    ActionResult skip_turn(const std::string& reason);

    StateSnapshot render_state(const std::vector<LeaderboardRow>& leaderboard) const;

    const ParticipantState& state() const { return state_; }
    const Contest& contest() const { return contest_; }
    const std::vector<std::string>& visible_problems() const { return visible_; }
    int turn_index() const { return turn_; }
    std::int64_t elapsed_ms() const { return clock_->elapsed_ms(); }
    Clock& clock() { return *clock_; }
    LeaderboardRow standing() const;

private:
    ActionResult apply_action(const ActionRequest& request);
    ActionResult finish_turn(ActionResult result, std::size_t ledger_mark);
    Credits charge_usage(const Usage& usage, ActionResult* result);
    bool visible(const std::string& problem_id) const;

    ParticipantState state_;
    const Contest& contest_;
    ArenaServices services_;
    std::unique_ptr<Clock> clock_;
    std::vector<std::string> visible_;
    std::set<std::string> usage_keys_;
    int turn_ = 0;
};

/// Wraps render_state for callers holding only a Session.
inline StateSnapshot render_state(const Session& session, const std::vector<LeaderboardRow>& leaderboard) {
    return session.render_state(leaderboard);
}

}  // namespace arena
