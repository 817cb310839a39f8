#include "arena/analytics.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace arena {

using nlohmann::json;

namespace {

void require_participant(const MatchLog& log, const std::string& participant) {
    if (!log.footer) throw Error("log is incomplete (no footer)");
    for (const auto& p : log.header.participants) {
        if (p.id == participant) return;
    }
    throw Error("unknown participant '" + participant + "'");
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const StrategyProfileMetrics& m) {
    return {{"attempted_problems", m.attempted_problems},
            {"submission_count", m.submission_count},
            {"accepted_submissions", m.accepted_submissions},
            {"solved_problems", m.solved_problems},
            {"first_try_solved", m.first_try_solved},
            {"submission_precision", optional_json(m.submission_precision)},
            {"problems_solve_rate", optional_json(m.problems_solve_rate)},
            {"first_submit_accuracy", optional_json(m.first_submit_accuracy)},
            {"attempted_definition", "problems with at least one submission"}};
}

StrategyProfileMetrics profile(const MatchLog& log, const std::string& participant) {
    require_participant(log, participant);
    StrategyProfileMetrics m;
    std::set<std::string> attempted, solved, first_try;
    for (const auto* t : log.turns_of(participant)) {
        if (!t->action.is_object() || t->action.value("action", std::string()) != "SUBMIT_SOLUTION") continue;
        // Rejected before judging (unknown problem, already solved, ...): not a submission.
        if (!t->result.contains("verdict")) continue;
        const auto id = t->result.at("problem_id").get<std::string>();
        const bool ac = t->result.at("verdict").get<std::string>() == "AC";
        const bool first = attempted.insert(id).second;
        ++m.submission_count;
        if (ac) {
            ++m.accepted_submissions;
            solved.insert(id);
            if (first) first_try.insert(id);
        }
    }
    m.attempted_problems = static_cast<int>(attempted.size());
    m.solved_problems = static_cast<int>(solved.size());
    m.first_try_solved = static_cast<int>(first_try.size());
    if (m.submission_count > 0) m.submission_precision = double(m.accepted_submissions) / m.submission_count;
    if (m.attempted_problems > 0) m.problems_solve_rate = double(m.solved_problems) / m.attempted_problems;
    if (m.solved_problems > 0) m.first_submit_accuracy = double(m.first_try_solved) / m.solved_problems;
    return m;
}

json to_json(const CreditBreakdown& b) {
    return {{"inference", b.inference}, {"hint", b.hint},       {"test", b.test},
            {"time", b.time},           {"penalty", b.penalty}, {"total", b.total}};
}

CreditBreakdown breakdown(const MatchLog& log, const std::string& participant) {
    require_participant(log, participant);
    CreditBreakdown b;
    for (const auto* t : log.turns_of(participant)) {
        for (const auto& e : t->ledger) {
            switch (e.category) {
                case LedgerCategory::Inference: b.inference += e.amount; break;
                case LedgerCategory::Hint: b.hint += e.amount; break;
                case LedgerCategory::Test: b.test += e.amount; break;
                case LedgerCategory::Time: b.time += e.amount; break;
                case LedgerCategory::Penalty: b.penalty += e.amount; break;
            }
        }
    }
    b.total = b.inference + b.hint + b.test + b.time + b.penalty;
    return b;
}

MeanStd mean_std(const std::vector<double>& values) {
    MeanStd r;
    r.n = static_cast<int>(values.size());
    if (values.empty()) return r;
    double sum = 0;
    for (double v : values) sum += v;
    r.mean = sum / r.n;
    if (r.n > 1) {
        double ss = 0;
        for (double v : values) ss += (v - r.mean) * (v - r.mean);
        r.stddev = std::sqrt(ss / (r.n - 1));
    }
    return r;
}

std::vector<std::string> SeriesResult::participants() const {
    std::set<std::string> ids;
    for (const auto& run : runs) {
        for (const auto& row : run) ids.insert(row.participant_id);
    }
    return {ids.begin(), ids.end()};
}

std::vector<SeriesAggregate> SeriesResult::aggregates() const {
    std::map<std::string, std::vector<double>> scores, consumed, ranks;
    for (const auto& run : runs) {
        for (std::size_t i = 0; i < run.size(); ++i) {
            const auto& row = run[i];
            scores[row.participant_id].push_back(static_cast<double>(row.score));
            consumed[row.participant_id].push_back(static_cast<double>(row.tiebreak));
            ranks[row.participant_id].push_back(static_cast<double>(i + 1));
        }
    }
    std::vector<SeriesAggregate> out;
    for (const auto& [id, s] : scores) {
        out.push_back({id, mean_std(s), mean_std(consumed[id]), mean_std(ranks[id])});
    }
    return out;
}

json to_json(const SeriesResult& series) {
    json aggregates = json::array();
    auto ms = [](const MeanStd& m) { return json{{"mean", m.mean}, {"std", m.stddev}, {"n", m.n}}; };
    for (const auto& a : series.aggregates()) {
        aggregates.push_back(
            {{"participant_id", a.participant_id}, {"score", ms(a.score)}, {"consumed", ms(a.consumed)}, {"rank", ms(a.rank)}});
    }
    return {{"label", series.label}, {"seeds", series.seeds}, {"runs", series.runs}, {"aggregates", aggregates}};
}

std::string ablation_matrix_csv(const std::vector<SeriesResult>& series) {
    if (series.empty()) throw Error("ablation matrix needs at least one series");
    const auto participants = series.front().participants();
    for (const auto& s : series) {
        if (s.participants() != participants) {
            throw Error("series '" + s.label + "' has a different participant set than '" + series.front().label + "'");
        }
    }
    std::ostringstream out;
    out << "participant";
    for (const auto& s : series) out << ',' << s.label;
    out << '\n';
    std::vector<std::map<std::string, double>> means;
    for (const auto& s : series) {
        auto& m = means.emplace_back();
        for (const auto& a : s.aggregates()) m[a.participant_id] = a.score.mean;
    }
    for (const auto& id : participants) {
        out << id;
        for (const auto& m : means) out << ',' << m.at(id);
        out << '\n';
    }
    return out.str();
}

}  // namespace arena
