#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/contest.hpp"
#include "arena/participant.hpp"

namespace arena {

enum class RowStatus { Active, Terminated };

struct LeaderboardRow {
    std::string participant_id;
    Credits score = 0;
    /// consumed_total of the participant's ledger.
    Credits tiebreak = 0;
    RowStatus status = RowStatus::Active;

    bool operator==(const LeaderboardRow&) const = default;
};

void to_json(nlohmann::json& j, const LeaderboardRow& row);
void from_json(const nlohmann::json& j, LeaderboardRow& row);

/// Sum of weights over solved problems. Throws for ids not in the contest.
Credits score(const std::set<std::string>& solved, const Contest& contest, const ContestConfig& config);

/// Orders by score desc, tiebreak asc, then participant id asc.
std::vector<LeaderboardRow> rank(std::vector<LeaderboardRow> rows);
std::vector<LeaderboardRow> rank(const std::vector<const ParticipantState*>& participants,
                                 const Contest& contest);

/// Leaderboard row for one participant; Withdrawn participants show as TERMINATED
/// since they are out of the competition either way.
LeaderboardRow standing(const ParticipantState& participant, const Contest& contest);

/// "1. <id>: Score <S>, Credit+Penalty: <C> [ACTIVE]" lines joined by '\n'.
std::string render_rankings(const std::vector<LeaderboardRow>& rows);

}  // namespace arena
