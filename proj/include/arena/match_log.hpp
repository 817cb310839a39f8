#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/config.hpp"
#include "arena/ledger.hpp"
#include "arena/participant.hpp"
#include "arena/protocol.hpp"
#include "arena/scoring.hpp"

namespace arena {

struct LogParticipant {
    std::string id;
    std::string agent;
};

struct MatchHeader {
    std::string kind = "match";  // match | qualification | swarm
    std::string contest_id;
    ContestConfig config;
    std::uint64_t seed = 0;
    std::vector<LogParticipant> participants;
    std::vector<ProblemListing> problems;
    /// Wall-clock start (ISO-8601 UTC); excluded from determinism checks.
    std::string started_at;
    nlohmann::json extra = nlohmann::json::object();
};

/// One turn of one participant. `action` never carries source code, only its hash.
struct TurnRecord {
    std::string participant;
    int turn_index = 0;
    nlohmann::json action;  // null for malformed messages and skipped turns
    nlohmann::json result;  // summary: ok, error, verdict, passed, total, ...
    std::vector<LedgerEntry> ledger;
    Credits charged = 0;
    ParticipantStatus status_after = ParticipantStatus::Active;
    std::optional<Usage> usage;
    nlohmann::json swarm;  // null outside swarm simulations
    std::int64_t t_ms = 0;
    /// Real elapsed milliseconds since match start; excluded from determinism checks.
    std::int64_t wall_ms = 0;
};

struct MatchFooter {
    std::vector<LeaderboardRow> leaderboard;
    bool aborted = false;
    std::string abort_reason;
};

struct MatchLog {
    MatchHeader header;
    std::vector<TurnRecord> turns;
    std::optional<MatchFooter> footer;

    bool complete() const { return footer.has_value() && !footer->aborted; }
    std::vector<const TurnRecord*> turns_of(const std::string& participant) const;
};

nlohmann::json header_json(const MatchHeader& header);
nlohmann::json turn_json(const TurnRecord& record);
nlohmann::json footer_json(const MatchFooter& footer);

/// Builds a turn record from a request and its result. Source code in the
/// request is replaced by its hash.
TurnRecord make_turn_record(const std::string& participant, const ParsedAction* parsed, const ActionResult& result,
                            const ParticipantState& state_after, std::size_t ledger_mark, std::int64_t t_ms,
                            std::int64_t wall_ms);

/// Appends records as JSON lines, flushing each one; the footer goes last.
class MatchLogWriter {
public:
    MatchLogWriter() = default;
    explicit MatchLogWriter(const std::filesystem::path& path);

    void header(const MatchHeader& header);
    void turn(const TurnRecord& record);
    void footer(const MatchFooter& footer);
    bool is_open() const { return out_.is_open(); }

private:
    void line(const nlohmann::json& j);
    std::ofstream out_;
};

std::string to_jsonl(const MatchLog& log);
void write_log(const MatchLog& log, const std::filesystem::path& path);
/// Parses a log. A missing footer leaves `footer` empty (truncated log).
MatchLog parse_log(std::string_view jsonl);
MatchLog read_log(const std::filesystem::path& path);

/// Drops wall-clock fields (started_at, wall_ms) so logs can be compared.
std::string deterministic_view(const MatchLog& log);

/// Participant state rebuilt from turn records alone.
struct ReplayState {
    std::array<Credits, 5> category_sums{};
    std::set<std::string> solved;
    ParticipantStatus status = ParticipantStatus::Active;
    int turns = 0;

    Credits consumed() const;
    Credits termination() const;
};

std::map<std::string, ReplayState> replay_states(const MatchLog& log);
/// Leaderboard recomputed from the header and the turn records.
std::vector<LeaderboardRow> replay_leaderboard(const MatchLog& log);

}  // namespace arena
