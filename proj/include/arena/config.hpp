#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/types.hpp"

namespace arena {

struct JudgeOptions {
    /// Keep judging after the first failing case (diagnostics only; the verdict
    /// and passed count are unchanged).
    bool run_all_cases = false;
    std::size_t max_custom_cases = 10;
    std::size_t output_cap_bytes = 16u << 20;
};

/// Every tunable of a contest. Defaults are the standard arena configuration.
struct ContestConfig {
    Credits credit_limit = 20'000'000;
    std::array<Credits, 4> score_weights = {1, 2, 5, 10};
    std::array<Credits, 5> hint_costs = {500, 1000, 1000, 1500, 1500};
    Credits test_cost = 10;
    /// Extra charge per custom case on top of test_cost. Zero keeps TEST_CODE flat.
    Credits test_cost_per_case = 0;
    std::map<Verdict, Credits> penalty_schedule = {
        {Verdict::WA, 100}, {Verdict::RE, 100}, {Verdict::CE, 100},
        {Verdict::TLE, 100}, {Verdict::MLE, 100}};
    double alpha = 0.0;
    std::array<int, 4> problem_distribution = {3, 3, 3, 3};
    int total_problems = 12;
    double agent_turn_timeout = 300.0;
    std::uint64_t rng_seed = 0;
    /// Hard cap on turns per participant; reaching it withdraws the participant.
    int max_turns = 10'000;
    JudgeOptions judge;

    Credits weight(DifficultyLevel level) const { return score_weights[index_of(level)]; }
};

struct ConfigViolation {
    std::string field;
    std::string message;
};

/// Returns one violation per broken invariant; empty means the config is valid.
std::vector<ConfigViolation> validate_config(const ContestConfig& config);

/// Named weight presets: "flat" (1/1/1/1), "default" (1/2/5/10), "exp" (1/10/100/1000).
std::array<Credits, 4> weight_preset(const std::string& name);

void to_json(nlohmann::json& j, const ContestConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, ContestConfig& config);

/// Applies the keys present in `patch` on top of `base`. "score_weights" may
/// also name a preset. Throws when the result violates an invariant.
ContestConfig patch_config(const ContestConfig& base, const nlohmann::json& patch);

}  // namespace arena
