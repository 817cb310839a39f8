#include "arena/scoring.hpp"

#include <algorithm>
#include <tuple>

namespace arena {

using nlohmann::json;

std::string_view to_string(ParticipantStatus status) {
    switch (status) {
        case ParticipantStatus::Active: return "ACTIVE";
        case ParticipantStatus::Terminated: return "TERMINATED";
        case ParticipantStatus::Withdrawn: return "WITHDRAWN";
    }
    return "?";
}

std::optional<ParticipantStatus> parse_status(std::string_view text) {
    for (auto s : {ParticipantStatus::Active, ParticipantStatus::Terminated, ParticipantStatus::Withdrawn}) {
        if (to_string(s) == text) return s;
    }
    return std::nullopt;
}

void to_json(json& j, const LeaderboardRow& row) {
    j = json{{"participant_id", row.participant_id},
             {"score", row.score},
             {"tiebreak", row.tiebreak},
             {"status", row.status == RowStatus::Active ? "ACTIVE" : "TERMINATED"}};
}

void from_json(const json& j, LeaderboardRow& row) {
    row.participant_id = j.at("participant_id").get<std::string>();
    row.score = j.at("score").get<Credits>();
    row.tiebreak = j.at("tiebreak").get<Credits>();
    row.status = j.at("status").get<std::string>() == "ACTIVE" ? RowStatus::Active : RowStatus::Terminated;
}

Credits score(const std::set<std::string>& solved, const Contest& contest, const ContestConfig& config) {
    Credits total = 0;
    for (const auto& id : solved) total += config.weight(contest.at(id).level);
    return total;
}

std::vector<LeaderboardRow> rank(std::vector<LeaderboardRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
        return std::tuple(-a.score, a.tiebreak, a.participant_id) <
               std::tuple(-b.score, b.tiebreak, b.participant_id);
    });
    return rows;
}

LeaderboardRow standing(const ParticipantState& participant, const Contest& contest) {
    return {participant.id, score(participant.solved, contest, contest.config),
            consumed_total(participant.ledger),
            participant.active() ? RowStatus::Active : RowStatus::Terminated};
}

std::vector<LeaderboardRow> rank(const std::vector<const ParticipantState*>& participants,
                                 const Contest& contest) {
    std::vector<LeaderboardRow> rows;
    rows.reserve(participants.size());
    for (const auto* p : participants) rows.push_back(standing(*p, contest));
    return rank(std::move(rows));
}

std::string render_rankings(const std::vector<LeaderboardRow>& rows) {
    std::string out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (i) out += '\n';
        out += std::to_string(i + 1) + ". " + r.participant_id + ": Score " + std::to_string(r.score) +
               ", Credit+Penalty: " + std::to_string(r.tiebreak) +
               (r.status == RowStatus::Active ? " [ACTIVE]" : " [TERMINATED]");
    }
    return out;
}

}  // namespace arena
