#include "arena/config.hpp"

#include <cmath>
#include <numeric>
#include <set>

namespace arena {

using nlohmann::json;

std::vector<ConfigViolation> validate_config(const ContestConfig& config) {
    std::vector<ConfigViolation> out;
    auto flag = [&out](std::string field, std::string message) {
        out.push_back({std::move(field), std::move(message)});
    };

    if (config.credit_limit < 0) flag("credit_limit", "must be >= 0");
    for (auto level : kAllLevels) {
        if (config.weight(level) <= 0) {
            flag("score_weights", std::string(to_string(level)) + " weight must be > 0");
        }
    }
    for (std::size_t i = 0; i < config.hint_costs.size(); ++i) {
        if (config.hint_costs[i] < 0) {
            flag("hint_costs", "level " + std::to_string(i) + " cost must be >= 0");
        }
    }
    if (config.test_cost < 0) flag("test_cost", "must be >= 0");
    if (config.test_cost_per_case < 0) flag("test_cost_per_case", "must be >= 0");
    for (auto verdict : kAllVerdicts) {
        if (verdict == Verdict::AC) continue;
        auto it = config.penalty_schedule.find(verdict);
        if (it == config.penalty_schedule.end()) {
            flag("penalty_schedule", std::string(to_string(verdict)) + " missing");
        } else if (it->second < 0) {
            flag("penalty_schedule", std::string(to_string(verdict)) + " must be >= 0");
        }
    }
    if (config.penalty_schedule.count(Verdict::AC) != 0) {
        flag("penalty_schedule", "AC cannot carry a penalty");
    }
    if (!(config.alpha >= 0.0) || !std::isfinite(config.alpha)) flag("alpha", "must be >= 0");
    for (auto level : kAllLevels) {
        if (config.problem_distribution[index_of(level)] < 0) {
            flag("problem_distribution", std::string(to_string(level)) + " count must be >= 0");
        }
    }
    const int sum = std::accumulate(config.problem_distribution.begin(),
                                    config.problem_distribution.end(), 0);
    if (sum != config.total_problems) {
        flag("problem_distribution", "sums to " + std::to_string(sum) + ", total_problems is " +
                                         std::to_string(config.total_problems));
    }
    if (!(config.agent_turn_timeout > 0.0)) flag("agent_turn_timeout", "must be > 0");
    if (config.max_turns <= 0) flag("max_turns", "must be > 0");
    if (config.judge.max_custom_cases == 0) flag("judge.max_custom_cases", "must be > 0");
    return out;
}

std::array<Credits, 4> weight_preset(const std::string& name) {
    if (name == "flat") return {1, 1, 1, 1};
    if (name == "default") return {1, 2, 5, 10};
    if (name == "exp") return {1, 10, 100, 1000};
    throw Error("unknown weight preset '" + name + "' (flat|default|exp)");
}

namespace {

std::string level_key(DifficultyLevel level) {
    std::string key(to_string(level));
    key[0] = static_cast<char>(key[0] - 'A' + 'a');
    return key;
}

template <typename T>
std::array<T, 4> per_level(const json& j, const char* field) {
    if (!j.is_object()) throw Error(std::string(field) + ": expected an object keyed by level");
    std::array<T, 4> out{};
    std::set<std::string> seen;
    for (auto level : kAllLevels) {
        const auto key = level_key(level);
        if (!j.contains(key)) throw Error(std::string(field) + ": missing '" + key + "'");
        out[index_of(level)] = j.at(key).get<T>();
        seen.insert(key);
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!seen.count(it.key())) {
            throw Error(std::string(field) + ": unknown level '" + it.key() + "'");
        }
    }
    return out;
}

}  // namespace

void to_json(json& j, const ContestConfig& config) {
    json weights = json::object();
    json distribution = json::object();
    for (auto level : kAllLevels) {
        weights[level_key(level)] = config.weight(level);
        distribution[level_key(level)] = config.problem_distribution[index_of(level)];
    }
    json penalties = json::object();
    for (const auto& [verdict, amount] : config.penalty_schedule) {
        penalties[std::string(to_string(verdict))] = amount;
    }
    j = json{{"credit_limit", config.credit_limit},
             {"score_weights", weights},
             {"hint_costs", config.hint_costs},
             {"test_cost", config.test_cost},
             {"test_cost_per_case", config.test_cost_per_case},
             {"penalty_schedule", penalties},
             {"alpha", config.alpha},
             {"problem_distribution", distribution},
             {"total_problems", config.total_problems},
             {"agent_turn_timeout", config.agent_turn_timeout},
             {"rng_seed", config.rng_seed},
             {"max_turns", config.max_turns},
             {"judge",
              {{"run_all_cases", config.judge.run_all_cases},
               {"max_custom_cases", config.judge.max_custom_cases},
               {"output_cap_bytes", config.judge.output_cap_bytes}}}};
}

void from_json(const json& j, ContestConfig& config) {
    if (!j.is_object()) throw Error("config: expected a JSON object");
    static const std::set<std::string> known = {
        "credit_limit", "score_weights", "hint_costs", "test_cost", "test_cost_per_case",
        "penalty_schedule", "alpha", "problem_distribution", "total_problems",
        "agent_turn_timeout", "rng_seed", "max_turns", "judge"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) throw Error("config: unknown key '" + it.key() + "'");
    }
    try {
        if (j.contains("credit_limit")) config.credit_limit = j.at("credit_limit").get<Credits>();
        if (j.contains("score_weights")) {
            config.score_weights = per_level<Credits>(j.at("score_weights"), "score_weights");
        }
        if (j.contains("hint_costs")) {
            const auto& costs = j.at("hint_costs");
            if (!costs.is_array() || costs.size() != 5) {
                throw Error("hint_costs: expected an array of 5 costs (levels 0..4)");
            }
            for (std::size_t i = 0; i < 5; ++i) config.hint_costs[i] = costs[i].get<Credits>();
        }
        if (j.contains("test_cost")) config.test_cost = j.at("test_cost").get<Credits>();
        if (j.contains("test_cost_per_case")) {
            config.test_cost_per_case = j.at("test_cost_per_case").get<Credits>();
        }
        if (j.contains("penalty_schedule")) {
            config.penalty_schedule.clear();
            for (auto it = j.at("penalty_schedule").begin(); it != j.at("penalty_schedule").end();
                 ++it) {
                auto verdict = parse_verdict(it.key());
                if (!verdict) throw Error("penalty_schedule: unknown verdict '" + it.key() + "'");
                config.penalty_schedule[*verdict] = it.value().get<Credits>();
            }
        }
        if (j.contains("alpha")) config.alpha = j.at("alpha").get<double>();
        if (j.contains("problem_distribution")) {
            config.problem_distribution =
                per_level<int>(j.at("problem_distribution"), "problem_distribution");
        }
        if (j.contains("total_problems")) config.total_problems = j.at("total_problems").get<int>();
        if (j.contains("agent_turn_timeout")) {
            config.agent_turn_timeout = j.at("agent_turn_timeout").get<double>();
        }
        if (j.contains("rng_seed")) config.rng_seed = j.at("rng_seed").get<std::uint64_t>();
        if (j.contains("max_turns")) config.max_turns = j.at("max_turns").get<int>();
        if (j.contains("judge")) {
            const auto& judge = j.at("judge");
            if (judge.contains("run_all_cases")) {
                config.judge.run_all_cases = judge.at("run_all_cases").get<bool>();
            }
            if (judge.contains("max_custom_cases")) {
                config.judge.max_custom_cases = judge.at("max_custom_cases").get<std::size_t>();
            }
            if (judge.contains("output_cap_bytes")) {
                config.judge.output_cap_bytes = judge.at("output_cap_bytes").get<std::size_t>();
            }
        }
    } catch (const json::exception& e) {
        throw Error(std::string("config: ") + e.what());
    }
}

ContestConfig patch_config(const ContestConfig& base, const json& patch) {
    ContestConfig out = base;
    json p = patch;
    if (p.contains("score_weights") && p.at("score_weights").is_string()) {
        out.score_weights = weight_preset(p.at("score_weights").get<std::string>());
        p.erase("score_weights");
    }
    from_json(p, out);
    if (auto v = validate_config(out); !v.empty()) throw Error("config: " + v.front().field + ": " + v.front().message);
    return out;
}

}  // namespace arena
