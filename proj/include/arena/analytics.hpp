#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/match_log.hpp"

namespace arena {

struct StrategyProfileMetrics {
    /// Problems with at least one submission. Viewing is free and does not count.
    int attempted_problems = 0;
    int submission_count = 0;
    int accepted_submissions = 0;
    int solved_problems = 0;
    int first_try_solved = 0;
    // Absent when the denominator is zero.
    std::optional<double> submission_precision;
    std::optional<double> problems_solve_rate;
    std::optional<double> first_submit_accuracy;
};

nlohmann::json to_json(const StrategyProfileMetrics& metrics);

/// Throws for an incomplete log or a participant the log does not know.
StrategyProfileMetrics profile(const MatchLog& log, const std::string& participant);

struct CreditBreakdown {
    Credits inference = 0;
    Credits hint = 0;
    Credits test = 0;
    Credits time = 0;
    Credits penalty = 0;
    Credits total = 0;

    bool operator==(const CreditBreakdown&) const = default;
};

nlohmann::json to_json(const CreditBreakdown& breakdown);
CreditBreakdown breakdown(const MatchLog& log, const std::string& participant);

struct MeanStd {
    double mean = 0;
    /// Sample standard deviation (n - 1); 0 when fewer than two samples.
    double stddev = 0;
    int n = 0;
};

MeanStd mean_std(const std::vector<double>& values);

struct SeriesAggregate {
    std::string participant_id;
    MeanStd score;
    MeanStd consumed;
    MeanStd rank;
};

/// Leaderboards of repeated matches under one configuration.
struct SeriesResult {
    std::string label;
    std::vector<std::uint64_t> seeds;
    std::vector<std::vector<LeaderboardRow>> runs;

    std::vector<std::string> participants() const;
    std::vector<SeriesAggregate> aggregates() const;
};

nlohmann::json to_json(const SeriesResult& series);

/// Rows are participants, columns are series labels, cells are mean scores.
/// Throws when the series disagree on the participant set.
std::string ablation_matrix_csv(const std::vector<SeriesResult>& series);

}  // namespace arena
