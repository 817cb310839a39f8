#include "arena/agents.hpp"

#include <algorithm>
#include <chrono>

#include "arena/io.hpp"

namespace arena {

using nlohmann::json;

const ProblemScript* CannedSolutionBook::find(const std::string& problem_id) const {
    auto it = problems.find(problem_id);
    return it == problems.end() ? nullptr : &it->second;
}

namespace {

CannedSubmission parse_attempt(const json& j, const std::filesystem::path& base_dir) {
    CannedSubmission a;
    if (j.contains("source")) {
        a.source = j.at("source").get<std::string>();
        a.label = "inline";
    } else if (j.contains("source_file")) {
        const auto file = j.at("source_file").get<std::string>();
        a.source = read_file(base_dir / file);
        a.label = file;
    } else {
        throw Error("book attempt needs 'source' or 'source_file'");
    }
    const auto language = j.at("language").get<std::string>();
    auto lang = parse_language(language);
    if (!lang) throw Error("book attempt: unknown language '" + language + "'");
    a.language = *lang;
    const auto verdict = j.value("expected_verdict", std::string("AC"));
    auto v = parse_verdict(verdict);
    if (!v) throw Error("book attempt: unknown verdict '" + verdict + "'");
    a.expected_verdict = *v;
    if (j.contains("synthetic_tokens")) {
        a.input_tokens = j.at("synthetic_tokens").value("input", std::int64_t{0});
        a.output_tokens = j.at("synthetic_tokens").value("output", std::int64_t{0});
    }
    if (a.input_tokens < 0 || a.output_tokens < 0) throw Error("book attempt: negative token count");
    return a;
}

HintRequest parse_book_hint(const json& j) {
    HintRequest h;
    h.level = j.at("hint_level").get<int>();
    if (j.contains("problem_id")) h.problem_id = j.at("problem_id").get<std::string>();
    if (j.contains("hint_knowledge")) h.hint_knowledge = j.at("hint_knowledge").get<std::string>();
    if (j.contains("problem_difficulty")) h.problem_difficulty = parse_level(j.at("problem_difficulty").get<std::string>());
    return h;
}

}  // namespace

CannedSolutionBook CannedSolutionBook::from_json(const json& j, const std::filesystem::path& base_dir) {
    CannedSolutionBook book;
    book.model_id = j.value("model_id", book.model_id);
    if (j.contains("turn_tokens")) {
        book.turn_input_tokens = j.at("turn_tokens").value("input", std::int64_t{0});
        book.turn_output_tokens = j.at("turn_tokens").value("output", std::int64_t{0});
    }
    for (auto it = j.at("problems").begin(); it != j.at("problems").end(); ++it) {
        ProblemScript script;
        const json& attempts = it.value().is_array() ? it.value() : it.value().at("attempts");
        for (const auto& a : attempts) script.attempts.push_back(parse_attempt(a, base_dir));
        if (it.value().is_object() && it.value().contains("hints")) {
            for (const auto& h : it.value().at("hints")) script.hints.push_back(parse_book_hint(h));
        }
        book.problems[it.key()] = std::move(script);
    }
    return book;
}

CannedSolutionBook CannedSolutionBook::load(const std::filesystem::path& path) {
    try {
        return from_json(json::parse(read_file(path)), path.parent_path());
    } catch (const json::exception& e) {
        throw Error("book " + path.string() + ": " + e.what());
    }
}

std::string_view to_string(StrategyKind kind) {
    switch (kind) {
        case StrategyKind::GreedyEasiest: return "GreedyEasiest";
        case StrategyKind::TerminateNow: return "TerminateNow";
        case StrategyKind::RandomWalk: return "RandomWalk";
        case StrategyKind::SpeedySpendthrift: return "SpeedySpendthrift";
        case StrategyKind::FrugalPerfectionist: return "FrugalPerfectionist";
        case StrategyKind::CostAwareStrategist: return "CostAwareStrategist";
    }
    return "?";
}

std::optional<StrategyKind> parse_strategy_kind(std::string_view text) {
    for (auto k : {StrategyKind::GreedyEasiest, StrategyKind::TerminateNow, StrategyKind::RandomWalk,
                   StrategyKind::SpeedySpendthrift, StrategyKind::FrugalPerfectionist,
                   StrategyKind::CostAwareStrategist}) {
        if (to_string(k) == text) return k;
    }
    return std::nullopt;
}

bool is_swarm_kind(StrategyKind kind) {
    return kind == StrategyKind::SpeedySpendthrift || kind == StrategyKind::FrugalPerfectionist ||
           kind == StrategyKind::CostAwareStrategist;
}

int StrategyProfile::effective_workers() const {
    if (workers > 0) return workers;
    switch (kind) {
        case StrategyKind::SpeedySpendthrift: return 8;
        case StrategyKind::CostAwareStrategist: return 4;
        default: return 1;
    }
}

StrategyProfile profile_from_json(const json& j) {
    StrategyProfile p;
    const auto kind = j.at("kind").get<std::string>();
    auto k = parse_strategy_kind(kind);
    if (!k) throw Error("unknown strategy kind '" + kind + "'");
    p.kind = *k;
    // Frugal's caution is the point of the profile.
    p.test_before_submit = p.kind == StrategyKind::FrugalPerfectionist;
    const json params = j.value("parameters", json::object());
    for (auto it = params.begin(); it != params.end(); ++it) {
        const auto& key = it.key();
        if (key == "workers") p.workers = it.value().get<int>();
        else if (key == "reserve_fraction") p.reserve_fraction = it.value().get<double>();
        else if (key == "comm_tokens_per_message") p.comm_tokens_per_message = it.value().get<std::int64_t>();
        else if (key == "seed") p.seed = it.value().get<std::uint64_t>();
        else if (key == "test_before_submit") p.test_before_submit = it.value().get<bool>();
        else if (key == "buy_hints") p.buy_hints = it.value().get<bool>();
        else if (key == "tick_ms") p.tick_ms = it.value().get<std::int64_t>();
        else throw Error("unknown strategy parameter '" + key + "'");
    }
    if (p.workers < 0 || (j.value("parameters", json::object()).contains("workers") && p.workers < 1)) {
        throw Error("workers must be >= 1");
    }
    if (p.reserve_fraction < 0 || p.reserve_fraction > 1) throw Error("reserve_fraction must be in [0,1]");
    if (p.comm_tokens_per_message < 0) throw Error("comm_tokens_per_message must be >= 0");
    if (p.tick_ms <= 0) throw Error("tick_ms must be > 0");
    return p;
}

json to_json(const StrategyProfile& p) {
    return {{"kind", to_string(p.kind)},
            {"parameters",
             {{"workers", p.effective_workers()},
              {"reserve_fraction", p.reserve_fraction},
              {"comm_tokens_per_message", p.comm_tokens_per_message},
              {"seed", p.seed},
              {"test_before_submit", p.test_before_submit},
              {"buy_hints", p.buy_hints},
              {"tick_ms", p.tick_ms}}}};
}

AgentMemory make_memory(const StrategyProfile& profile, std::uint64_t match_seed) {
    AgentMemory m;
    m.rng.seed(profile.seed ^ (match_seed * 0x9e3779b97f4a7c15ULL));
    return m;
}

namespace {

bool sample_outputs_match(const json& outcomes, const std::vector<TestCase>& samples) {
    if (!outcomes.is_array() || outcomes.size() != samples.size()) return false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& o = outcomes.at(i);
        if (o.value("exit", std::string()) != "ok") return false;
        if (!outputs_match(samples[i].expected_output, o.value("stdout", std::string()))) return false;
    }
    return true;
}

}  // namespace

void observe(AgentMemory& memory, const ActionResult* last) {
    if (!last || !last->action) {
        memory.pending_test.reset();
        return;
    }
    if (*last->action == ActionKind::ViewProblem && last->ok) {
        const auto id = last->payload.at("problem_id").get<std::string>();
        auto& samples = memory.samples[id];
        samples.clear();
        for (const auto& s : last->payload.at("samples")) {
            samples.push_back({s.at("input").get<std::string>(), s.at("output").get<std::string>()});
        }
    }
    if (*last->action == ActionKind::TestCode && memory.pending_test) {
        const auto key = *memory.pending_test;
        const auto& samples = memory.samples[key.first];
        if (last->ok && sample_outputs_match(last->payload.value("outcomes", json::array()), samples)) {
            memory.tested.insert(key);
        } else {
            // Fails its own samples: never worth a penalty.
            memory.next_attempt[key.first] = std::max(memory.next_attempt[key.first], key.second + 1);
        }
    }
    memory.pending_test.reset();
}

namespace {

std::optional<Usage> usage_for(const CannedSolutionBook& book, const StateSnapshot& s, std::int64_t in,
                               std::int64_t out) {
    if (in == 0 && out == 0) return std::nullopt;
    return Usage{in, out, book.model_id, s.name + "#" + std::to_string(s.turn_index)};
}

ActionRequest make_request(ActionKind kind, json params, std::optional<Usage> usage) {
    ActionRequest r;
    r.action = kind;
    r.parameters = std::move(params);
    r.usage = std::move(usage);
    return r;
}

json hint_params(const HintRequest& h, const std::string& problem_id) {
    json p{{"hint_level", h.level}};
    if (h.level == 1 || h.level == 3) p["problem_id"] = h.problem_id.value_or(problem_id);
    else if (h.problem_id) p["problem_id"] = *h.problem_id;
    if (h.hint_knowledge) p["hint_knowledge"] = *h.hint_knowledge;
    if (h.problem_difficulty) p["problem_difficulty"] = std::string(to_string(*h.problem_difficulty));
    return p;
}

std::vector<std::string> inputs_of(const std::vector<TestCase>& samples) {
    std::vector<std::string> out;
    for (const auto& s : samples) out.push_back(s.input);
    return out;
}

bool solved_in(const StateSnapshot& s, const std::string& id) {
    return std::find(s.solved.begin(), s.solved.end(), id) != s.solved.end();
}

// Unsolved problems the book still has attempts for, cheapest weight first.
std::vector<std::string> open_problems(const StateSnapshot& s, const CannedSolutionBook& book,
                                       const AgentMemory& memory) {
    std::vector<std::pair<std::tuple<Credits, std::size_t, std::size_t>, std::string>> order;
    for (std::size_t i = 0; i < s.problems.size(); ++i) {
        const auto& p = s.problems[i];
        if (solved_in(s, p.id)) continue;
        const auto* script = book.find(p.id);
        if (!script) continue;
        auto it = memory.next_attempt.find(p.id);
        const std::size_t next = it == memory.next_attempt.end() ? 0 : it->second;
        if (next >= script->attempts.size()) continue;
        order.push_back({{s.score_weights[index_of(p.level)], index_of(p.level), i}, p.id});
    }
    std::sort(order.begin(), order.end());
    std::vector<std::string> out;
    for (auto& [key, id] : order) out.push_back(id);
    return out;
}

ActionRequest greedy_step(const StrategyProfile& profile, const StateSnapshot& s, const CannedSolutionBook& book,
                          AgentMemory& memory) {
    const auto open = open_problems(s, book, memory);
    if (open.empty()) return make_request(ActionKind::Terminate, json::object(), std::nullopt);
    const auto& id = open.front();
    const auto& script = *book.find(id);
    const auto turn_usage = usage_for(book, s, book.turn_input_tokens, book.turn_output_tokens);

    if (!memory.viewed.count(id)) {
        memory.viewed.insert(id);
        return make_request(ActionKind::ViewProblem, {{"problem_id", id}}, turn_usage);
    }
    auto& hint_index = memory.next_hint[id];
    if (profile.buy_hints && hint_index < script.hints.size()) {
        const auto& h = script.hints[hint_index++];
        return make_request(ActionKind::GetHint, hint_params(h, id), turn_usage);
    }
    const std::size_t index = memory.next_attempt[id];
    const auto& attempt = script.attempts[index];
    const auto key = std::make_pair(id, index);
    const auto& samples = memory.samples[id];
    if (profile.test_before_submit && !samples.empty() && !memory.tested.count(key)) {
        memory.pending_test = key;
        memory.paid.insert(key);
        return make_request(ActionKind::TestCode,
                            {{"source", attempt.source},
                             {"language", to_string(attempt.language)},
                             {"test_cases", inputs_of(samples)},
                             {"problem_id", id}},
                            usage_for(book, s, attempt.input_tokens, attempt.output_tokens));
    }
    memory.next_attempt[id] = index + 1;
    const auto usage = memory.paid.count(key) ? turn_usage
                                              : usage_for(book, s, attempt.input_tokens, attempt.output_tokens);
    return make_request(ActionKind::SubmitSolution,
                        {{"problem_id", id}, {"source", attempt.source}, {"language", to_string(attempt.language)}},
                        usage);
}

ActionRequest random_step(const StateSnapshot& s, const CannedSolutionBook& book, AgentMemory& memory) {
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(memory.rng() % n); };
    std::vector<std::string> unsolved;
    for (const auto& p : s.problems) {
        if (!solved_in(s, p.id)) unsolved.push_back(p.id);
    }
    std::vector<ActionKind> legal{ActionKind::GetHint, ActionKind::TestCode, ActionKind::Terminate};
    if (!s.problems.empty()) legal.push_back(ActionKind::ViewProblem);
    if (!unsolved.empty()) legal.push_back(ActionKind::SubmitSolution);
    const auto kind = legal[pick(legal.size())];
    const auto usage = usage_for(book, s, book.turn_input_tokens, book.turn_output_tokens);

    auto random_attempt = [&](const std::string& id) -> std::pair<std::string, std::string> {
        const auto* script = book.find(id);
        if (script && !script->attempts.empty()) {
            const auto& a = script->attempts[pick(script->attempts.size())];
            return {a.source, std::string(to_string(a.language))};
        }
        return {"int main() { return 0; }\n", "cpp17"};
    };

    switch (kind) {
        case ActionKind::ViewProblem: {
            const auto& id = s.problems[pick(s.problems.size())].id;
            memory.viewed.insert(id);
            return make_request(kind, {{"problem_id", id}}, usage);
        }
        case ActionKind::GetHint: {
            const int level = static_cast<int>(pick(5));
            json p{{"hint_level", level}};
            if (!s.problems.empty()) p["problem_id"] = s.problems[pick(s.problems.size())].id;
            static const char* kKnowledge[] = {"dynamic programming", "graph", "greedy", "binary search"};
            p["hint_knowledge"] = kKnowledge[pick(4)];
            p["problem_difficulty"] = std::string(to_string(kAllLevels[pick(4)]));
            return make_request(kind, p, usage);
        }
        case ActionKind::TestCode: {
            const std::string id = s.problems.empty() ? std::string() : s.problems[pick(s.problems.size())].id;
            auto [source, language] = random_attempt(id);
            std::vector<std::string> inputs{"1\n"};
            if (auto it = memory.samples.find(id); it != memory.samples.end() && !it->second.empty()) {
                inputs = inputs_of(it->second);
            }
            return make_request(kind, {{"source", source}, {"language", language}, {"test_cases", inputs}}, usage);
        }
        case ActionKind::SubmitSolution: {
            const auto id = unsolved[pick(unsolved.size())];
            auto [source, language] = random_attempt(id);
            return make_request(kind, {{"problem_id", id}, {"source", source}, {"language", language}}, usage);
        }
        case ActionKind::Terminate:
            break;
    }
    return make_request(ActionKind::Terminate, json::object(), std::nullopt);
}

}  // namespace

ActionRequest step(const StrategyProfile& profile, const StateSnapshot& snapshot, const CannedSolutionBook& book,
                   AgentMemory& memory) {
    ActionRequest out;
    if (snapshot.status != ParticipantStatus::Active) {
        out = make_request(ActionKind::Terminate, json::object(), std::nullopt);
    } else {
        switch (profile.kind) {
            case StrategyKind::TerminateNow:
                out = make_request(ActionKind::Terminate, json::object(), std::nullopt);
                break;
            case StrategyKind::RandomWalk:
                out = random_step(snapshot, book, memory);
                break;
            default:
                out = greedy_step(profile, snapshot, book, memory);
                break;
        }
    }
    memory.last_request = out;
    return out;
}

ScriptedAgent::ScriptedAgent(StrategyProfile profile, std::shared_ptr<const CannedSolutionBook> book,
                             std::uint64_t match_seed)
    : profile_(std::move(profile)), book_(std::move(book)), memory_(make_memory(profile_, match_seed)) {
    if (!book_) book_ = std::make_shared<CannedSolutionBook>();
}

ActionRequest ScriptedAgent::act(const StateSnapshot& snapshot, const ActionResult* last_result) {
    observe(memory_, last_result);
    return step(profile_, snapshot, *book_, memory_);
}

std::map<std::string, AgentDefinition> load_agent_definitions(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw Error("agents file " + path.string() + ": " + e.what());
    }
    std::map<std::string, std::shared_ptr<const CannedSolutionBook>> books;
    std::map<std::string, AgentDefinition> out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        AgentDefinition def;
        def.name = it.key();
        try {
            def.profile = profile_from_json(it.value());
        } catch (const json::exception& e) {
            throw Error("agent '" + def.name + "': " + e.what());
        }
        if (it.value().contains("book_path")) {
            const auto book_path = path.parent_path() / it.value().at("book_path").get<std::string>();
            auto& book = books[book_path.string()];
            if (!book) book = std::make_shared<CannedSolutionBook>(CannedSolutionBook::load(book_path));
            def.book = book;
        } else {
            def.book = std::make_shared<CannedSolutionBook>();
        }
        out[def.name] = std::move(def);
    }
    return out;
}

namespace {

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

MatchLog simulate_swarm(const StrategyProfile& profile, const Contest& contest, const ArenaServices& services,
                        const CannedSolutionBook& book, const SwarmOptions& options) {
    if (!is_swarm_kind(profile.kind)) {
        throw Error("simulate_swarm needs a swarm profile, got " + std::string(to_string(profile.kind)));
    }
    const auto& config = contest.config;
    const auto wall_start = std::chrono::steady_clock::now();
    auto wall = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - wall_start)
            .count();
    };

    auto clock = std::make_unique<SimulatedClock>(0);
    auto* sim = clock.get();
    Session session(options.participant_id, contest, services, std::move(clock));

    MatchLog log;
    log.header.kind = "swarm";
    log.header.contest_id = contest.id;
    log.header.config = config;
    log.header.seed = options.seed;
    log.header.participants = {{options.participant_id, "swarm:" + std::string(to_string(profile.kind))}};
    for (const auto& p : contest.problems) log.header.problems.push_back({p.id, p.level});
    log.header.started_at = utc_now();
    log.header.extra = {{"profile", to_json(profile)}};
    MatchLogWriter writer;
    if (options.log_path) writer = MatchLogWriter(*options.log_path);
    writer.header(log.header);

    AgentMemory memory = make_memory(profile, options.seed);
    // Workers read statements directly; no VIEW turns in the simulation.
    for (const auto& p : contest.problems) memory.samples[p.id] = p.samples;

    auto play = [&](const ActionRequest& request, const json& swarm) {
        const ParsedAction parsed = request;
        const auto mark = session.state().ledger.entries().size();
        auto result = session.step(parsed);
        auto record = make_turn_record(options.participant_id, &parsed, result, session.state(), mark,
                                       session.elapsed_ms(), wall());
        record.swarm = swarm;
        writer.turn(record);
        log.turns.push_back(std::move(record));
        return result;
    };

    int wave = 0;
    while (session.state().active()) {
        int width = profile.effective_workers();
        if (profile.kind == StrategyKind::CostAwareStrategist) {
            const double threshold = (1.0 - profile.reserve_fraction) * static_cast<double>(config.credit_limit);
            if (static_cast<double>(termination_total(session.state().ledger)) > threshold) width = 1;
        }
        const auto snapshot = session.render_state({});
        auto targets = open_problems(snapshot, book, memory);
        if (targets.size() > static_cast<std::size_t>(width)) targets.resize(static_cast<std::size_t>(width));
        if (targets.empty()) {
            play(make_request(ActionKind::Terminate, json::object(), std::nullopt),
                 {{"wave", wave}, {"workers", 0}, {"worker", 0}, {"overhead_tokens", 0}});
            break;
        }
        ++wave;
        sim->advance(profile.tick_ms);
        const std::int64_t w = width;
        const std::int64_t overhead = profile.comm_tokens_per_message * w * (w - 1) / 2;

        for (std::size_t i = 0; i < targets.size() && session.state().active(); ++i) {
            const auto& id = targets[i];
            const std::size_t index = memory.next_attempt[id];
            const auto& attempt = book.find(id)->attempts[index];
            const std::int64_t extra = i == 0 ? overhead : 0;
            const json swarm{{"wave", wave}, {"workers", width}, {"worker", i}, {"overhead_tokens", extra}};
            const auto stamp = session.render_state({});
            auto gen_usage = usage_for(book, stamp, attempt.input_tokens, attempt.output_tokens + extra);

            if (profile.test_before_submit && !memory.samples[id].empty()) {
                memory.pending_test = std::make_pair(id, index);
                auto result = play(make_request(ActionKind::TestCode,
                                                {{"source", attempt.source},
                                                 {"language", to_string(attempt.language)},
                                                 {"test_cases", inputs_of(memory.samples[id])},
                                                 {"problem_id", id}},
                                                gen_usage),
                                   swarm);
                observe(memory, &result);
                if (!memory.tested.count({id, index}) || !session.state().active()) continue;
                gen_usage.reset();
            }
            memory.next_attempt[id] = index + 1;
            json submit_swarm = swarm;
            if (!gen_usage) submit_swarm["overhead_tokens"] = 0;
            play(make_request(ActionKind::SubmitSolution,
                              {{"problem_id", id}, {"source", attempt.source},
                               {"language", to_string(attempt.language)}},
                              gen_usage),
                 submit_swarm);
        }
    }

    MatchFooter footer;
    footer.leaderboard = {session.standing()};
    writer.footer(footer);
    log.footer = footer;
    return log;
}

SwarmSummary summarize_swarm(const MatchLog& log) {
    SwarmSummary s;
    for (const auto& t : log.turns) {
        if (t.usage) {
            const auto overhead = t.swarm.is_object() ? t.swarm.value("overhead_tokens", std::int64_t{0}) : 0;
            s.overhead_tokens += overhead;
            s.attempt_tokens += t.usage->input_tokens + t.usage->output_tokens - overhead;
        }
        if (t.swarm.is_object()) {
            const int wave = t.swarm.value("wave", 0);
            if (wave > s.ticks) {
                s.ticks = wave;
                s.wave_widths.push_back(t.swarm.value("workers", 0));
            }
        }
        s.wall_ms = std::max(s.wall_ms, t.t_ms);
    }
    const auto board = replay_leaderboard(log);
    if (!board.empty()) {
        s.score = board.front().score;
        s.consumed = board.front().tiebreak;
    }
    return s;
}

}  // namespace arena
