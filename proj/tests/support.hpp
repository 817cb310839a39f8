#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/agents.hpp"
#include "arena/contest.hpp"
#include "arena/hints.hpp"
#include "arena/io.hpp"
#include "arena/judge.hpp"
#include "arena/ledger.hpp"
#include "arena/protocol.hpp"

namespace testing {

namespace fs = std::filesystem;

inline fs::path source_dir() { return fs::path(ARENA_SOURCE_DIR); }
inline fs::path desk_dir() { return source_dir() / "data" / "desk"; }
inline fs::path corpus_dir() { return source_dir() / "data" / "corpus"; }
inline fs::path logs_dir() { return source_dir() / "data" / "logs"; }

/// Loaded once per process; everything a Session needs for the desk contest.
struct Desk {
    arena::Contest contest;
    arena::Judge judge;
    arena::Corpora corpora;
    arena::PriceTable prices;

    Desk()
        : contest(arena::load_contest(desk_dir())),
          corpora(arena::Corpora::load(corpus_dir())),
          prices(arena::PriceTable::standard()) {
        judge.enable_cache(true);
    }

    arena::ArenaServices services() const {
        arena::ArenaServices s;
        s.judge = &judge;
        s.corpora = &corpora;
        s.prices = &prices;
        s.default_model = "gpt-5-2025-08-07";
        return s;
    }

    /// Same problems under another config.
    arena::Contest with(const nlohmann::json& patch) const {
        return arena::load_contest(desk_dir(), arena::patch_config(contest.config, patch));
    }
};

inline Desk& desk() {
    static Desk d;
    return d;
}

inline std::vector<fs::path> shipped_logs() {
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(logs_dir())) {
        if (e.path().extension() == ".jsonl") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Economy oracle for the greedy scripted policy, worked straight from the
// book JSON and the published prices. It shares no code with the arena: token
// prices are hard-coded per million tokens in cents, penalties and hint costs
// come from the config patch, and termination is "action + time >= limit,
// checked after the turn's effects apply".

struct OracleOutcome {
    std::string id;
    std::int64_t score = 0;
    std::int64_t consumed = 0;
    std::set<std::string> solved;
};

struct OracleRules {
    std::int64_t limit = 20'000'000;
    std::array<std::int64_t, 4> weights = {1, 2, 5, 10};
    std::array<std::int64_t, 5> hint_costs = {500, 1000, 1000, 1500, 1500};
    std::int64_t penalty = 100;
};

// gpt-5: $1.25 in / $10.00 out per million tokens = 1.25 / 10 credits per token.
inline std::int64_t oracle_tokens_cost(std::int64_t in, std::int64_t out) {
    return (in * 125 + out * 1000 + 50) / 100;
}

inline OracleOutcome oracle_greedy(const std::string& id, const fs::path& book_path, const OracleRules& rules) {
    const auto book = nlohmann::json::parse(arena::read_file(book_path));
    const auto contest = nlohmann::json::parse(arena::read_file(desk_dir() / "contest.json"));
    const std::int64_t turn_cost =
        oracle_tokens_cost(book["turn_tokens"].value("input", 0), book["turn_tokens"].value("output", 0));

    // Problem order: weight, then level, then manifest position.
    static const std::map<std::string, int> level_index = {{"Bronze", 0}, {"Silver", 1}, {"Gold", 2}, {"Platinum", 3}};
    std::vector<std::tuple<std::int64_t, int, int, std::string>> order;
    int pos = 0;
    for (const auto& p : contest["problems"]) {
        const std::string pid = p;
        int lvl = -1;
        std::istringstream meta(arena::read_file(desk_dir() / "problems" / pid / "meta"));
        for (std::string line; std::getline(meta, line);) {
            if (line.rfind("level=", 0) == 0) lvl = level_index.at(line.substr(6));
        }
        if (book["problems"].contains(pid)) order.emplace_back(rules.weights[lvl], lvl, pos, pid);
        ++pos;
    }
    std::sort(order.begin(), order.end());

    OracleOutcome o;
    o.id = id;
    std::int64_t action = 0, penalty = 0;
    auto spent = [&](std::int64_t c) {
        action += c;
        return action >= rules.limit;
    };
    for (const auto& [w, lvl, p, pid] : order) {
        const auto& script = book["problems"][pid];
        if (spent(turn_cost)) goto done;  // VIEW_PROBLEM
        if (script.contains("hints")) {
            for (const auto& h : script["hints"]) {
                if (spent(turn_cost + rules.hint_costs[h["hint_level"].get<int>()])) goto done;
            }
        }
        for (const auto& a : script["attempts"]) {
            const bool ac = a["expected_verdict"] == "AC";
            if (ac) {
                o.solved.insert(pid);
                o.score += w;
            } else {
                penalty += rules.penalty;
            }
            if (spent(oracle_tokens_cost(a["synthetic_tokens"]["input"], a["synthetic_tokens"]["output"]))) goto done;
            if (ac) break;
        }
    }
done:
    o.consumed = action + penalty;
    return o;
}

/// Winner by score desc, consumed asc, id asc.
inline std::string oracle_winner(std::vector<OracleOutcome> rows) {
    std::sort(rows.begin(), rows.end(), [](const OracleOutcome& a, const OracleOutcome& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.consumed != b.consumed) return a.consumed < b.consumed;
        return a.id < b.id;
    });
    return rows.front().id;
}

}  // namespace testing
