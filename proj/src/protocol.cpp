#include "arena/protocol.hpp"

#include <algorithm>

#include "arena/hash.hpp"

namespace arena {

using nlohmann::json;

std::string_view to_string(ActionKind kind) {
    switch (kind) {
        case ActionKind::ViewProblem: return "VIEW_PROBLEM";
        case ActionKind::GetHint: return "GET_HINT";
        case ActionKind::SubmitSolution: return "SUBMIT_SOLUTION";
        case ActionKind::TestCode: return "TEST_CODE";
        case ActionKind::Terminate: return "TERMINATE";
    }
    return "?";
}

std::optional<ActionKind> parse_action_kind(std::string_view text) {
    for (auto k : {ActionKind::ViewProblem, ActionKind::GetHint, ActionKind::SubmitSolution, ActionKind::TestCode,
                   ActionKind::Terminate}) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

std::string_view to_string(ProtocolErrorCode code) {
    switch (code) {
        case ProtocolErrorCode::Malformed: return "malformed";
        case ProtocolErrorCode::UnknownAction: return "unknown_action";
        case ProtocolErrorCode::MissingParameter: return "missing_parameter";
        case ProtocolErrorCode::InvalidParameter: return "invalid_parameter";
    }
    return "?";
}

json to_json(const Usage& usage) {
    json j{{"input_tokens", usage.input_tokens}, {"output_tokens", usage.output_tokens}};
    if (!usage.model_id.empty()) j["model_id"] = usage.model_id;
    if (usage.idempotency_key) j["idempotency_key"] = *usage.idempotency_key;
    return j;
}

json to_json(const ActionRequest& request) {
    json j{{"action", to_string(request.action)}, {"parameters", request.parameters}};
    if (request.usage) j["usage"] = to_json(*request.usage);
    return j;
}

namespace {

ProtocolError fail(ProtocolErrorCode code, std::string message, std::optional<Usage> usage = std::nullopt) {
    return {code, std::move(message), std::move(usage)};
}

// Returns an error message, or empty when the usage block is valid.
std::string parse_usage(const json& j, Usage& usage) {
    if (!j.is_object()) return "usage must be an object";
    for (const char* key : {"input_tokens", "output_tokens"}) {
        if (j.contains(key) && !j.at(key).is_number_integer()) return std::string(key) + " must be an integer";
    }
    usage.input_tokens = j.value("input_tokens", std::int64_t{0});
    usage.output_tokens = j.value("output_tokens", std::int64_t{0});
    if (usage.input_tokens < 0 || usage.output_tokens < 0) return "token counts must be >= 0";
    if (j.contains("model_id")) {
        if (!j.at("model_id").is_string()) return "model_id must be a string";
        usage.model_id = j.at("model_id").get<std::string>();
    }
    if (j.contains("idempotency_key") && !j.at("idempotency_key").is_null()) {
        if (!j.at("idempotency_key").is_string()) return "idempotency_key must be a string";
        usage.idempotency_key = j.at("idempotency_key").get<std::string>();
    }
    return {};
}

}  // namespace

ParsedAction parse_action(std::string_view raw) {
    json message;
    try {
        message = json::parse(raw);
    } catch (const json::parse_error& e) {
        return fail(ProtocolErrorCode::Malformed, std::string("not valid JSON: ") + e.what());
    }
    return parse_action(message);
}

ParsedAction parse_action(const json& message) {
    if (!message.is_object()) return fail(ProtocolErrorCode::Malformed, "message must be a JSON object");

    std::optional<Usage> usage;
    if (message.contains("usage") && !message.at("usage").is_null()) {
        Usage u;
        if (auto err = parse_usage(message.at("usage"), u); !err.empty()) {
            return fail(ProtocolErrorCode::InvalidParameter, err);
        }
        usage = std::move(u);
    }

    if (!message.contains("action") || !message.at("action").is_string()) {
        return fail(ProtocolErrorCode::Malformed, "missing string field 'action'", usage);
    }
    const auto name = message.at("action").get<std::string>();
    const auto kind = parse_action_kind(name);
    if (!kind) return fail(ProtocolErrorCode::UnknownAction, "unknown action '" + name + "'", usage);

    json params = json::object();
    if (message.contains("parameters") && !message.at("parameters").is_null()) {
        params = message.at("parameters");
        if (!params.is_object()) return fail(ProtocolErrorCode::Malformed, "'parameters' must be an object", usage);
    }

    auto need_string = [&](const char* key) -> std::optional<ProtocolError> {
        if (!params.contains(key)) return fail(ProtocolErrorCode::MissingParameter, std::string("missing parameter '") + key + "'", usage);
        if (!params.at(key).is_string()) return fail(ProtocolErrorCode::InvalidParameter, std::string("parameter '") + key + "' must be a string", usage);
        return std::nullopt;
    };

    switch (*kind) {
        case ActionKind::ViewProblem:
            if (auto e = need_string("problem_id")) return *e;
            break;
        case ActionKind::GetHint: {
            if (!params.contains("hint_level")) return fail(ProtocolErrorCode::MissingParameter, "missing parameter 'hint_level'", usage);
            if (!params.at("hint_level").is_number_integer()) {
                return fail(ProtocolErrorCode::InvalidParameter, "hint_level must be an integer", usage);
            }
            const int level = params.at("hint_level").get<int>();
            if (level < 0 || level > 4) return fail(ProtocolErrorCode::InvalidParameter, "hint_level must be in 0..4", usage);
            if (level == 1 || level == 3) {
                if (auto e = need_string("problem_id")) return *e;
            }
            if (level == 2 || level == 4) {
                if (auto e = need_string("hint_knowledge")) return *e;
            }
            if (level == 4) {
                if (auto e = need_string("problem_difficulty")) return *e;
                if (!parse_level(params.at("problem_difficulty").get<std::string>())) {
                    return fail(ProtocolErrorCode::InvalidParameter, "problem_difficulty must be Bronze, Silver, Gold or Platinum", usage);
                }
            }
            break;
        }
        case ActionKind::SubmitSolution:
            for (const char* key : {"problem_id", "source", "language"}) {
                if (auto e = need_string(key)) return *e;
            }
            break;
        case ActionKind::TestCode:
            for (const char* key : {"source", "language"}) {
                if (auto e = need_string(key)) return *e;
            }
            if (!params.contains("test_cases")) return fail(ProtocolErrorCode::MissingParameter, "missing parameter 'test_cases'", usage);
            if (!params.at("test_cases").is_array() ||
                !std::all_of(params.at("test_cases").begin(), params.at("test_cases").end(),
                             [](const json& c) { return c.is_string(); })) {
                return fail(ProtocolErrorCode::InvalidParameter, "test_cases must be a list of input strings", usage);
            }
            if (params.contains("problem_id") && !params.at("problem_id").is_string()) {
                return fail(ProtocolErrorCode::InvalidParameter, "parameter 'problem_id' must be a string", usage);
            }
            break;
        case ActionKind::Terminate:
            break;
    }
    return ActionRequest{*kind, std::move(params), std::move(usage)};
}

json to_json(const ActionResult& result) {
    json j{{"ok", result.ok},
           {"action", result.action ? json(to_string(*result.action)) : json(nullptr)},
           {"payload", result.payload},
           {"charged", result.charged},
           {"turn_index", result.turn_index}};
    if (result.error) j["error"] = {{"code", result.error->code}, {"message", result.error->message}};
    if (result.termination_notice) j["termination_notice"] = *result.termination_notice;
    return j;
}

namespace {

json weights_json(const std::array<Credits, 4>& weights) {
    json j = json::object();
    for (auto level : kAllLevels) j[std::string(to_string(level))] = weights[index_of(level)];
    return j;
}

}  // namespace

json to_json(const StateSnapshot& s) {
    json penalties = json::object();
    for (const auto& [verdict, amount] : s.penalties) penalties[std::string(to_string(verdict))] = amount;
    json problems = json::array();
    for (const auto& p : s.problems) problems.push_back({{"id", p.id}, {"level", to_string(p.level)}});
    return json{{"turn_index", s.turn_index},
                {"rules",
                 {{"credit_limit", s.credit_limit},
                  {"score_weights", weights_json(s.score_weights)},
                  {"hint_costs", s.hint_costs},
                  {"test_cost", s.test_cost},
                  {"penalties", penalties},
                  {"alpha", s.alpha},
                  {"languages", s.languages}}},
                {"status",
                 {{"name", s.name},
                  {"consumed_credit", s.consumed_credit},
                  {"termination_credit", s.termination_credit},
                  {"solved", s.solved},
                  {"score", s.score},
                  {"penalty", s.penalty},
                  {"state", to_string(s.status)}}},
                {"problems", problems},
                {"rankings", s.rankings},
                {"rankings_text", render_rankings(s.rankings)}};
}

StateSnapshot snapshot_from_json(const json& j) {
    StateSnapshot s;
    s.turn_index = j.at("turn_index").get<int>();
    const auto& rules = j.at("rules");
    s.credit_limit = rules.at("credit_limit").get<Credits>();
    for (auto level : kAllLevels) {
        s.score_weights[index_of(level)] = rules.at("score_weights").at(std::string(to_string(level))).get<Credits>();
    }
    for (std::size_t i = 0; i < 5; ++i) s.hint_costs[i] = rules.at("hint_costs").at(i).get<Credits>();
    s.test_cost = rules.at("test_cost").get<Credits>();
    for (auto it = rules.at("penalties").begin(); it != rules.at("penalties").end(); ++it) {
        if (auto v = parse_verdict(it.key())) s.penalties[*v] = it.value().get<Credits>();
    }
    s.alpha = rules.at("alpha").get<double>();
    s.languages = rules.at("languages").get<std::vector<std::string>>();
    const auto& status = j.at("status");
    s.name = status.at("name").get<std::string>();
    s.consumed_credit = status.at("consumed_credit").get<Credits>();
    s.termination_credit = status.at("termination_credit").get<Credits>();
    s.solved = status.at("solved").get<std::vector<std::string>>();
    s.score = status.at("score").get<Credits>();
    s.penalty = status.at("penalty").get<Credits>();
    s.status = parse_status(status.at("state").get<std::string>()).value_or(ParticipantStatus::Active);
    for (const auto& p : j.at("problems")) {
        s.problems.push_back({p.at("id").get<std::string>(),
                              parse_level(p.at("level").get<std::string>()).value_or(DifficultyLevel::Bronze)});
    }
    s.rankings = j.at("rankings").get<std::vector<LeaderboardRow>>();
    return s;
}

std::int64_t SteadyClock::elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
}

Session::Session(std::string participant_id, const Contest& contest, ArenaServices services,
                 std::unique_ptr<Clock> clock, std::vector<std::string> visible_problems)
    : contest_(contest), services_(std::move(services)), clock_(std::move(clock)), visible_(std::move(visible_problems)) {
    state_.id = std::move(participant_id);
    if (!clock_) clock_ = std::make_unique<SteadyClock>();
    if (visible_.empty()) {
        for (const auto& p : contest_.problems) visible_.push_back(p.id);
    }
}

bool Session::visible(const std::string& problem_id) const {
    return std::find(visible_.begin(), visible_.end(), problem_id) != visible_.end();
}

LeaderboardRow Session::standing() const { return arena::standing(state_, contest_); }

StateSnapshot Session::render_state(const std::vector<LeaderboardRow>& leaderboard) const {
    const auto& config = contest_.config;
    StateSnapshot s;
    s.turn_index = turn_;
    s.credit_limit = config.credit_limit;
    s.score_weights = config.score_weights;
    s.hint_costs = config.hint_costs;
    s.test_cost = config.test_cost;
    s.penalties = config.penalty_schedule;
    s.alpha = config.alpha;
    s.languages = {"cpp17", "java", "python3"};
    s.name = state_.id;
    s.consumed_credit = consumed_total(state_.ledger);
    s.termination_credit = termination_total(state_.ledger);
    s.solved.assign(state_.solved.begin(), state_.solved.end());
    s.score = score(state_.solved, contest_, config);
    s.penalty = state_.ledger.sum(LedgerCategory::Penalty);
    s.status = state_.status;
    for (const auto& id : visible_) s.problems.push_back({id, contest_.at(id).level});
    s.rankings = leaderboard.empty() ? std::vector<LeaderboardRow>{standing()} : leaderboard;
    return s;
}

Credits Session::charge_usage(const Usage& usage, ActionResult* result) {
    if (usage.idempotency_key && !usage_keys_.insert(*usage.idempotency_key).second) return 0;
    const auto& model = usage.model_id.empty() ? services_.default_model : usage.model_id;
    if (!services_.prices || !services_.prices->contains(model)) {
        if (result) result->payload["usage_warning"] = "unknown model id '" + model + "'; usage not charged";
        return 0;
    }
    return charge_inference(state_.ledger, usage.input_tokens, usage.output_tokens, *services_.prices, model);
}

UsageAck Session::report_usage(const Usage& usage) {
    UsageAck ack;
    if (!state_.active()) {
        ack.consumed_credit = consumed_total(state_.ledger);
        return ack;
    }
    ack.duplicate = usage.idempotency_key && usage_keys_.count(*usage.idempotency_key) != 0;
    const auto mark = state_.ledger.entries().size();
    state_.ledger.set_stamp(turn_, clock_->elapsed_ms());
    charge_usage(usage, nullptr);
    accrue_time(state_.ledger, static_cast<double>(clock_->elapsed_ms()) / 1000.0, contest_.config);
    if (is_terminated(state_.ledger, contest_.config)) state_.finish(ParticipantStatus::Terminated);
    for (auto i = mark; i < state_.ledger.entries().size(); ++i) ack.charged += state_.ledger.entries()[i].amount;
    ack.consumed_credit = consumed_total(state_.ledger);
    return ack;
}

ActionResult Session::finish_turn(ActionResult result, std::size_t ledger_mark) {
    clock_->on_turn();
    state_.ledger.set_stamp(turn_, clock_->elapsed_ms());
    accrue_time(state_.ledger, static_cast<double>(clock_->elapsed_ms()) / 1000.0, contest_.config);
    if (state_.active() && is_terminated(state_.ledger, contest_.config)) {
        state_.finish(ParticipantStatus::Terminated);
        result.termination_notice = "credit limit reached: termination credit " +
                                    std::to_string(termination_total(state_.ledger)) + " >= limit " +
                                    std::to_string(contest_.config.credit_limit);
    }
    result.turn_index = turn_;
    ++turn_;
    if (state_.active() && turn_ >= contest_.config.max_turns) {
        state_.finish(ParticipantStatus::Withdrawn);
        result.termination_notice = "turn cap of " + std::to_string(contest_.config.max_turns) + " reached";
    }
    const auto& entries = state_.ledger.entries();
    result.charged = 0;
    for (auto i = ledger_mark; i < entries.size(); ++i) result.charged += entries[i].amount;
    return result;
}

ActionResult Session::step(std::string_view raw_message) { return step(parse_action(raw_message)); }

ActionResult Session::step(const ParsedAction& parsed) {
    if (!state_.active()) {
        ActionResult r;
        r.turn_index = turn_;
        r.error = ErrorInfo{"not_active", "participant is " + std::string(to_string(state_.status))};
        return r;
    }
    const auto mark = state_.ledger.entries().size();
    state_.ledger.set_stamp(turn_, clock_->elapsed_ms());

    if (const auto* err = std::get_if<ProtocolError>(&parsed)) {
        ActionResult r;
        if (err->usage) charge_usage(*err->usage, &r);
        r.error = ErrorInfo{std::string(to_string(err->code)), err->message};
        return finish_turn(std::move(r), mark);
    }
    const auto& request = std::get<ActionRequest>(parsed);
    ActionResult pre;
    if (request.usage) charge_usage(*request.usage, &pre);
    auto result = apply_action(request);
    if (pre.payload.contains("usage_warning")) result.payload["usage_warning"] = pre.payload["usage_warning"];
    return finish_turn(std::move(result), mark);
}

ActionResult Session::skip_turn(const std::string& reason) {
    ActionResult r;
    if (!state_.active()) {
        r.error = ErrorInfo{"not_active", "participant is " + std::string(to_string(state_.status))};
        return r;
    }
    const auto mark = state_.ledger.entries().size();
    state_.ledger.set_stamp(turn_, clock_->elapsed_ms());
    r.error = ErrorInfo{"turn_skipped", reason};
    return finish_turn(std::move(r), mark);
}

namespace {

json case_json(const TestCase& tc) { return {{"input", tc.input}, {"output", tc.expected_output}}; }

std::string clip(const std::string& text, std::size_t max) {
    return text.size() <= max ? text : text.substr(0, max) + "\n...[truncated]";
}

}  // namespace

ActionResult Session::apply_action(const ActionRequest& request) {
    ActionResult r;
    r.action = request.action;
    const auto& params = request.parameters;
    const auto& config = contest_.config;
    auto error = [&r](std::string code, std::string message) {
        r.ok = false;
        r.error = ErrorInfo{std::move(code), std::move(message)};
        return r;
    };
    auto problem_or_error = [&](const std::string& id) -> const Problem* {
        if (!visible(id)) return nullptr;
        return contest_.find(id);
    };

    switch (request.action) {
        case ActionKind::ViewProblem: {
            const auto id = params.at("problem_id").get<std::string>();
            const auto* p = problem_or_error(id);
            if (!p) return error("unknown_problem", "no visible problem '" + id + "'");
            json samples = json::array();
            for (const auto& s : p->samples) samples.push_back(case_json(s));
            r.ok = true;
            r.payload = {{"problem_id", p->id},       {"title", p->title},
                         {"level", to_string(p->level)}, {"statement", p->statement},
                         {"samples", samples},       {"time_limit_ms", p->time_limit_ms},
                         {"memory_limit_mib", p->memory_limit_mib}};
            return r;
        }
        case ActionKind::GetHint: {
            if (!services_.corpora) return error("hints_unavailable", "no hint corpora loaded");
            HintRequest hint;
            hint.level = params.at("hint_level").get<int>();
            if (params.contains("problem_id")) hint.problem_id = params.at("problem_id").get<std::string>();
            if (params.contains("hint_knowledge")) hint.hint_knowledge = params.at("hint_knowledge").get<std::string>();
            if (params.contains("problem_difficulty")) {
                hint.problem_difficulty = parse_level(params.at("problem_difficulty").get<std::string>());
            }
            if (hint.problem_id && !visible(*hint.problem_id) && (hint.level == 1 || hint.level == 3)) {
                return error("unknown_problem", "no visible problem '" + *hint.problem_id + "'");
            }
            try {
                auto response = get_hint(hint, contest_, *services_.corpora, state_.ledger, config);
                r.ok = true;
                r.payload = to_json(response);
            } catch (const HintError& e) {
                using Kind = HintError::Kind;
                const char* code = e.kind() == Kind::EmptyResult      ? "empty_result"
                                   : e.kind() == Kind::UnknownProblem ? "unknown_problem"
                                                                      : "missing_parameter";
                r.payload = {{"level", hint.level}, {"cost", e.charged()}};
                return error(code, e.what());
            }
            return r;
        }
        case ActionKind::TestCode: {
            const auto language_name = params.at("language").get<std::string>();
            const auto language = parse_language(language_name);
            if (!language || !services_.judge->toolchain().available(*language)) {
                return error("unsupported_language", "language '" + language_name + "' is not available");
            }
            const auto inputs = params.at("test_cases").get<std::vector<std::string>>();
            if (inputs.empty()) return error("empty_test_cases", "at least one custom test case is required");
            if (inputs.size() > config.judge.max_custom_cases) {
                return error("too_many_cases", "at most " + std::to_string(config.judge.max_custom_cases) +
                                                   " custom test cases per request");
            }
            RunLimits limits;
            limits.output_cap_bytes = config.judge.output_cap_bytes;
            if (params.contains("problem_id")) {
                const auto id = params.at("problem_id").get<std::string>();
                const auto* p = problem_or_error(id);
                if (!p) return error("unknown_problem", "no visible problem '" + id + "'");
                limits = Judge::limits_for(*p, config);
            }
            charge_test(state_.ledger, config, inputs.size());
            const auto outcomes = services_.judge->run_custom_tests(params.at("source").get<std::string>(), *language,
                                                                    inputs, limits, config);
            json list = json::array();
            for (const auto& o : outcomes) {
                list.push_back({{"exit", to_string(o.exit)},
                                {"stdout", clip(o.stdout_data, 1 << 16)},
                                {"stderr", clip(o.stderr_data, 4096)},
                                {"cpu_ms", o.cpu_ms},
                                {"wall_ms", o.wall_ms},
                                {"peak_mem_mib", o.peak_mem_mib}});
            }
            r.ok = true;
            r.payload = {{"outcomes", list}};
            return r;
        }
        case ActionKind::SubmitSolution: {
            const auto id = params.at("problem_id").get<std::string>();
            const auto* p = problem_or_error(id);
            if (!p) return error("unknown_problem", "no visible problem '" + id + "'");
            if (state_.solved.count(id)) return error("already_solved", "problem '" + id + "' is already solved");
            const auto language_name = params.at("language").get<std::string>();
            const auto language = parse_language(language_name);
            if (!language || !services_.judge->toolchain().available(*language)) {
                return error("unsupported_language", "language '" + language_name + "' is not available");
            }
            const auto source = params.at("source").get<std::string>();
            const auto result = services_.judge->judge_submission(*p, source, *language, config);

            SubmissionRecord record;
            record.problem_id = id;
            record.turn_index = turn_;
            record.verdict = result.verdict;
            record.passed = result.passed;
            record.total = result.total;
            record.language = *language;
            record.source_hash = hex64(fnv1a(source));
            state_.submissions.push_back(record);

            r.payload = to_json(result);
            r.payload["problem_id"] = id;
            r.payload["source_hash"] = record.source_hash;
            r.payload["language"] = language_name;
            if (!result.diagnostics.empty()) r.payload["diagnostics"] = clip(result.diagnostics, 4096);
            if (result.verdict == Verdict::AC) {
                state_.solved.insert(id);
                r.ok = true;
                r.payload["score_delta"] = config.weight(p->level);
            } else {
                r.ok = false;
                r.payload["score_delta"] = 0;
                r.payload["penalty"] = add_penalty(state_.ledger, result.verdict, config);
            }
            return r;
        }
        case ActionKind::Terminate:
            state_.finish(ParticipantStatus::Withdrawn);
            r.ok = true;
            r.payload = {{"acknowledged", true}};
            return r;
    }
    return error("unknown_action", "unhandled action");
}

}  // namespace arena
