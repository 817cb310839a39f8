#include "arena/match_log.hpp"

#include <sstream>

#include "arena/hash.hpp"
#include "arena/io.hpp"

namespace arena {

using nlohmann::json;

std::vector<const TurnRecord*> MatchLog::turns_of(const std::string& participant) const {
    std::vector<const TurnRecord*> out;
    for (const auto& t : turns) {
        if (t.participant == participant) out.push_back(&t);
    }
    return out;
}

json header_json(const MatchHeader& h) {
    json participants = json::array();
    for (const auto& p : h.participants) participants.push_back({{"id", p.id}, {"agent", p.agent}});
    json problems = json::array();
    for (const auto& p : h.problems) problems.push_back({{"id", p.id}, {"level", to_string(p.level)}});
    return json{{"record", "header"},   {"kind", h.kind},
                {"contest_id", h.contest_id}, {"config", h.config},
                {"seed", h.seed},       {"participants", participants},
                {"problems", problems}, {"started_at", h.started_at},
                {"extra", h.extra}};
}

json turn_json(const TurnRecord& t) {
    json j{{"record", "turn"},
           {"participant", t.participant},
           {"turn", t.turn_index},
           {"action", t.action},
           {"result", t.result},
           {"ledger", t.ledger},
           {"charged", t.charged},
           {"status_after", to_string(t.status_after)},
           {"t_ms", t.t_ms},
           {"wall_ms", t.wall_ms}};
    if (t.usage) j["usage"] = to_json(*t.usage);
    if (!t.swarm.is_null()) j["swarm"] = t.swarm;
    return j;
}

json footer_json(const MatchFooter& f) {
    json j{{"record", "footer"}, {"leaderboard", f.leaderboard}, {"aborted", f.aborted}};
    if (!f.abort_reason.empty()) j["abort_reason"] = f.abort_reason;
    return j;
}

namespace {

json summarize_action(const ParsedAction* parsed) {
    if (!parsed) return nullptr;
    const auto* request = std::get_if<ActionRequest>(parsed);
    if (!request) return nullptr;
    json params = request->parameters;
    if (params.contains("source") && params.at("source").is_string()) {
        params["source_hash"] = hex64(fnv1a(params.at("source").get<std::string>()));
        params["source_bytes"] = params.at("source").get<std::string>().size();
        params.erase("source");
    }
    // Custom inputs can be large; the count is enough to audit the charge.
    if (params.contains("test_cases") && params.at("test_cases").is_array()) {
        params["test_case_count"] = params.at("test_cases").size();
        params.erase("test_cases");
    }
    return {{"action", to_string(request->action)}, {"parameters", params}};
}

json summarize_result(const ActionResult& r) {
    json s{{"ok", r.ok}};
    if (r.error) s["error"] = r.error->code;
    if (r.termination_notice) s["termination_notice"] = *r.termination_notice;
    const auto& p = r.payload;
    if (!r.action) return s;
    switch (*r.action) {
        case ActionKind::SubmitSolution:
            for (const char* key : {"problem_id", "verdict", "passed", "total", "score_delta", "penalty", "language"}) {
                if (p.contains(key)) s[key] = p.at(key);
            }
            break;
        case ActionKind::GetHint:
            for (const char* key : {"level", "cost", "source_doc_id"}) {
                if (p.contains(key)) s[key] = p.at(key);
            }
            break;
        case ActionKind::TestCode:
            if (p.contains("outcomes")) {
                json exits = json::array();
                for (const auto& o : p.at("outcomes")) exits.push_back(o.at("exit"));
                s["exits"] = exits;
            }
            break;
        case ActionKind::ViewProblem:
            if (p.contains("problem_id")) s["problem_id"] = p.at("problem_id");
            break;
        case ActionKind::Terminate:
            break;
    }
    if (p.contains("usage_warning")) s["usage_warning"] = p.at("usage_warning");
    return s;
}

std::optional<Usage> usage_of(const ParsedAction* parsed) {
    if (!parsed) return std::nullopt;
    if (const auto* r = std::get_if<ActionRequest>(parsed)) return r->usage;
    return std::get<ProtocolError>(*parsed).usage;
}

}  // namespace

TurnRecord make_turn_record(const std::string& participant, const ParsedAction* parsed, const ActionResult& result,
                            const ParticipantState& state_after, std::size_t ledger_mark, std::int64_t t_ms,
                            std::int64_t wall_ms) {
    TurnRecord t;
    t.participant = participant;
    t.turn_index = result.turn_index;
    t.action = summarize_action(parsed);
    t.result = summarize_result(result);
    const auto& entries = state_after.ledger.entries();
    t.ledger.assign(entries.begin() + static_cast<std::ptrdiff_t>(ledger_mark), entries.end());
    t.charged = result.charged;
    t.status_after = state_after.status;
    t.usage = usage_of(parsed);
    t.t_ms = t_ms;
    t.wall_ms = wall_ms;
    return t;
}

MatchLogWriter::MatchLogWriter(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw Error("cannot open log file " + path.string());
}

void MatchLogWriter::line(const json& j) {
    if (!out_.is_open()) return;
    out_ << j.dump() << '\n';
    out_.flush();
}

void MatchLogWriter::header(const MatchHeader& h) { line(header_json(h)); }
void MatchLogWriter::turn(const TurnRecord& t) { line(turn_json(t)); }
void MatchLogWriter::footer(const MatchFooter& f) { line(footer_json(f)); }

std::string to_jsonl(const MatchLog& log) {
    std::string out = header_json(log.header).dump() + "\n";
    for (const auto& t : log.turns) out += turn_json(t).dump() + "\n";
    if (log.footer) out += footer_json(*log.footer).dump() + "\n";
    return out;
}

void write_log(const MatchLog& log, const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    write_file(path, to_jsonl(log));
}

namespace {

MatchHeader parse_header(const json& j) {
    MatchHeader h;
    h.kind = j.value("kind", std::string("match"));
    h.contest_id = j.at("contest_id").get<std::string>();
    h.config = j.at("config").get<ContestConfig>();
    h.seed = j.value("seed", std::uint64_t{0});
    for (const auto& p : j.at("participants")) {
        h.participants.push_back({p.at("id").get<std::string>(), p.value("agent", std::string())});
    }
    for (const auto& p : j.at("problems")) {
        const auto level = parse_level(p.at("level").get<std::string>());
        if (!level) throw Error("log header: bad level for problem " + p.at("id").dump());
        h.problems.push_back({p.at("id").get<std::string>(), *level});
    }
    h.started_at = j.value("started_at", std::string());
    h.extra = j.value("extra", json::object());
    return h;
}

TurnRecord parse_turn(const json& j) {
    TurnRecord t;
    t.participant = j.at("participant").get<std::string>();
    t.turn_index = j.at("turn").get<int>();
    t.action = j.value("action", json(nullptr));
    t.result = j.value("result", json::object());
    t.ledger = j.at("ledger").get<std::vector<LedgerEntry>>();
    t.charged = j.at("charged").get<Credits>();
    t.status_after = parse_status(j.at("status_after").get<std::string>()).value_or(ParticipantStatus::Active);
    if (j.contains("usage")) {
        const auto& u = j.at("usage");
        Usage usage;
        usage.input_tokens = u.value("input_tokens", std::int64_t{0});
        usage.output_tokens = u.value("output_tokens", std::int64_t{0});
        usage.model_id = u.value("model_id", std::string());
        if (u.contains("idempotency_key")) usage.idempotency_key = u.at("idempotency_key").get<std::string>();
        t.usage = usage;
    }
    t.swarm = j.value("swarm", json(nullptr));
    t.t_ms = j.value("t_ms", std::int64_t{0});
    t.wall_ms = j.value("wall_ms", std::int64_t{0});
    return t;
}

}  // namespace

MatchLog parse_log(std::string_view jsonl) {
    MatchLog log;
    bool have_header = false;
    std::istringstream in{std::string(jsonl)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            // A torn final line is what a crash mid-write leaves behind.
            if (in.peek() == EOF) break;
            throw Error("log line " + std::to_string(line_no) + ": " + e.what());
        }
        const auto kind = j.value("record", std::string());
        if (kind == "header") {
            log.header = parse_header(j);
            have_header = true;
        } else if (kind == "turn") {
            log.turns.push_back(parse_turn(j));
        } else if (kind == "footer") {
            MatchFooter f;
            f.leaderboard = j.at("leaderboard").get<std::vector<LeaderboardRow>>();
            f.aborted = j.value("aborted", false);
            f.abort_reason = j.value("abort_reason", std::string());
            log.footer = f;
        } else {
            throw Error("log line " + std::to_string(line_no) + ": unknown record '" + kind + "'");
        }
    }
    if (!have_header) throw Error("log has no header record");
    return log;
}

MatchLog read_log(const std::filesystem::path& path) { return parse_log(read_file(path)); }

std::string deterministic_view(const MatchLog& log) {
    std::string out;
    auto h = header_json(log.header);
    h.erase("started_at");
    out += h.dump() + "\n";
    for (const auto& t : log.turns) {
        auto j = turn_json(t);
        j.erase("wall_ms");
        out += j.dump() + "\n";
    }
    if (log.footer) out += footer_json(*log.footer).dump() + "\n";
    return out;
}

Credits ReplayState::consumed() const { return termination() + category_sums[4]; }

Credits ReplayState::termination() const {
    return category_sums[0] + category_sums[1] + category_sums[2] + category_sums[3];
}

std::map<std::string, ReplayState> replay_states(const MatchLog& log) {
    std::map<std::string, ReplayState> states;
    for (const auto& p : log.header.participants) states[p.id];
    for (const auto& t : log.turns) {
        auto& s = states[t.participant];
        ++s.turns;
        for (const auto& e : t.ledger) s.category_sums[static_cast<std::size_t>(e.category)] += e.amount;
        s.status = t.status_after;
        const bool submit = t.action.is_object() && t.action.value("action", std::string()) == "SUBMIT_SOLUTION";
        if (submit && t.result.value("verdict", std::string()) == "AC") {
            s.solved.insert(t.result.at("problem_id").get<std::string>());
        }
    }
    return states;
}

std::vector<LeaderboardRow> replay_leaderboard(const MatchLog& log) {
    std::map<std::string, DifficultyLevel> levels;
    for (const auto& p : log.header.problems) levels[p.id] = p.level;
    std::vector<LeaderboardRow> rows;
    for (const auto& [id, s] : replay_states(log)) {
        LeaderboardRow row;
        row.participant_id = id;
        for (const auto& pid : s.solved) {
            auto it = levels.find(pid);
            if (it == levels.end()) throw Error("log: solved problem '" + pid + "' missing from header");
            row.score += log.header.config.weight(it->second);
        }
        row.tiebreak = s.consumed();
        row.status = s.status == ParticipantStatus::Active ? RowStatus::Active : RowStatus::Terminated;
        rows.push_back(row);
    }
    return rank(std::move(rows));
}

}  // namespace arena
