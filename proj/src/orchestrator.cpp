#include "arena/orchestrator.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <thread>

#include "arena/io.hpp"
#include "arena/sandbox.hpp"

namespace arena {

using nlohmann::json;

std::optional<std::string> ScriptedEndpoint::next_message(const StateSnapshot& snapshot,
                                                          const ActionResult* last_result,
                                                          std::chrono::milliseconds) {
    return to_json(agent_.act(snapshot, last_result)).dump();
}

ProcessEndpoint::ProcessEndpoint(std::string command) : command_(std::move(command)) {
    int sv[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0) {
        throw Error(std::string("socketpair: ") + std::strerror(errno));
    }
    const pid_t pid = ::fork();
    if (pid < 0) {
        ::close(sv[0]);
        ::close(sv[1]);
        throw Error(std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) {
        ::dup2(sv[1], STDIN_FILENO);
        ::dup2(sv[1], STDOUT_FILENO);
        ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    ::close(sv[1]);
    pid_ = pid;
    to_child_ = sv[0];
    from_child_ = sv[0];
}

ProcessEndpoint::~ProcessEndpoint() { stop(); }

bool ProcessEndpoint::write_line(const std::string& line) {
    if (to_child_ < 0) return false;
    std::string data = line + "\n";
    std::size_t off = 0;
    while (off < data.size()) {
        const auto n = ::send(to_child_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        off += static_cast<std::size_t>(n);
    }
    return true;
}

std::optional<std::string> ProcessEndpoint::read_line(std::chrono::steady_clock::time_point deadline) {
    while (true) {
        if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
            auto line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            return line;
        }
        if (from_child_ < 0) return std::nullopt;
        const auto left =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now()).count();
        if (left <= 0) return std::nullopt;
        pollfd p{from_child_, POLLIN, 0};
        const int rc = ::poll(&p, 1, static_cast<int>(std::min<long long>(left, 1 << 30)));
        if (rc < 0 && errno == EINTR) continue;
        if (rc <= 0) return std::nullopt;
        char chunk[4096];
        const auto n = ::recv(from_child_, chunk, sizeof chunk, 0);
        if (n <= 0) {
            // Child closed its end; nothing more will come.
            ::close(from_child_);
            from_child_ = to_child_ = -1;
            return std::nullopt;
        }
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
}

std::optional<std::string> ProcessEndpoint::next_message(const StateSnapshot& snapshot,
                                                         const ActionResult* last_result,
                                                         std::chrono::milliseconds timeout) {
    json message{{"type", "state"}, {"turn", snapshot.turn_index}, {"state", to_json(snapshot)}};
    if (last_result) message["last_result"] = to_json(*last_result);
    if (!write_line(message.dump())) return std::nullopt;
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (auto line = read_line(deadline)) {
        try {
            const auto j = json::parse(*line);
            if (j.is_object() && j.contains("turn") && j.at("turn").is_number_integer() &&
                j.at("turn").get<int>() != snapshot.turn_index) {
                continue;
            }
        } catch (const json::parse_error&) {
            // Let the session report it as malformed.
        }
        return line;
    }
    return std::nullopt;
}

void ProcessEndpoint::finish(const StateSnapshot& snapshot) {
    write_line(json{{"type", "end"}, {"state", to_json(snapshot)}}.dump());
    stop();
}

void ProcessEndpoint::stop() {
    if (to_child_ >= 0) {
        ::close(to_child_);
        to_child_ = from_child_ = -1;
    }
    if (pid_ > 0) {
        int status = 0;
        for (int i = 0; i < 50; ++i) {
            if (::waitpid(pid_, &status, WNOHANG) == pid_) {
                pid_ = -1;
                return;
            }
            std::this_thread::sleep_for(std::chrono::milliseconds(10));
        }
        ::kill(pid_, SIGKILL);
        ::waitpid(pid_, &status, 0);
        pid_ = -1;
    }
}

std::string AgentFactory::base_name(const std::string& spec) {
    if (spec.rfind("scripted:", 0) == 0) return spec.substr(9);
    if (spec.rfind("exec:", 0) == 0) {
        auto cmd = spec.substr(5);
        auto first = cmd.substr(0, cmd.find(' '));
        auto slash = first.rfind('/');
        return slash == std::string::npos ? first : first.substr(slash + 1);
    }
    return spec;
}

std::unique_ptr<AgentEndpoint> AgentFactory::make(const std::string& spec, std::uint64_t match_seed) const {
    if (spec.rfind("exec:", 0) == 0) return std::make_unique<ProcessEndpoint>(spec.substr(5));
    if (spec.rfind("scripted:", 0) != 0) throw Error("agent spec must be scripted:<name> or exec:<command>: " + spec);
    const auto name = spec.substr(9);
    if (auto it = definitions_.find(name); it != definitions_.end()) {
        return std::make_unique<ScriptedEndpoint>(name, ScriptedAgent(it->second.profile, it->second.book, match_seed));
    }
    if (auto kind = parse_strategy_kind(name)) {
        StrategyProfile profile;
        profile.kind = *kind;
        return std::make_unique<ScriptedEndpoint>(name, ScriptedAgent(profile, nullptr, match_seed));
    }
    throw Error("unknown scripted agent '" + name + "'");
}

std::vector<std::string> assign_ids(const std::vector<std::string>& specs) {
    std::map<std::string, int> seen;
    std::vector<std::string> ids;
    for (const auto& spec : specs) {
        const auto base = AgentFactory::base_name(spec);
        const int n = ++seen[base];
        ids.push_back(n == 1 ? base : base + "#" + std::to_string(n));
    }
    return ids;
}

std::vector<Entrant> make_entrants(const std::vector<std::string>& specs, const AgentFactory& factory,
                                   std::uint64_t match_seed) {
    const auto ids = assign_ids(specs);
    std::vector<Entrant> out;
    for (std::size_t i = 0; i < specs.size(); ++i) out.push_back({ids[i], specs[i], factory.make(specs[i], match_seed)});
    return out;
}

namespace {

std::string utc_stamp(const char* format) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, format, &tm);
    return buf;
}

}  // namespace

std::string default_log_name(std::uint64_t seed) {
    return "match-" + utc_stamp("%Y%m%dT%H%M%SZ") + "-" + std::to_string(seed) + ".jsonl";
}

MatchLog run_match(std::vector<Entrant>& entrants, const Contest& contest, const ArenaServices& services,
                   const MatchOptions& options) {
    const auto wall_start = std::chrono::steady_clock::now();
    auto wall = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - wall_start)
            .count();
    };

    MatchLog log;
    auto& h = log.header;
    h.kind = options.kind;
    h.contest_id = contest.id;
    h.config = contest.config;
    h.seed = options.seed;
    for (const auto& e : entrants) h.participants.push_back({e.id, e.agent});
    for (const auto& p : contest.problems) {
        const auto& vis = options.visible_problems;
        if (vis.empty() || std::find(vis.begin(), vis.end(), p.id) != vis.end()) h.problems.push_back({p.id, p.level});
    }
    h.started_at = utc_stamp("%Y-%m-%dT%H:%M:%SZ");

    MatchLogWriter writer;
    if (options.log_path) writer = MatchLogWriter(*options.log_path);
    writer.header(h);

    std::vector<std::unique_ptr<Session>> sessions;
    for (const auto& e : entrants) {
        std::unique_ptr<Clock> clock;
        if (options.simulated_clock) clock = std::make_unique<SimulatedClock>(options.ms_per_turn);
        else clock = std::make_unique<SteadyClock>();
        sessions.push_back(
            std::make_unique<Session>(e.id, contest, services, std::move(clock), options.visible_problems));
    }
    auto leaderboard = [&] {
        std::vector<const ParticipantState*> states;
        for (const auto& s : sessions) states.push_back(&s->state());
        return rank(states, contest);
    };

    const auto timeout = std::chrono::milliseconds(static_cast<std::int64_t>(contest.config.agent_turn_timeout * 1000));
    std::vector<std::optional<ActionResult>> last(entrants.size());
    MatchFooter footer;
    try {
        bool any_active = true;
        while (any_active) {
            any_active = false;
            for (std::size_t i = 0; i < entrants.size(); ++i) {
                auto& session = *sessions[i];
                if (!session.state().active()) continue;
                any_active = true;
                const auto snapshot = session.render_state(leaderboard());
                const auto raw = entrants[i].endpoint->next_message(snapshot, last[i] ? &*last[i] : nullptr, timeout);
                const auto mark = session.state().ledger.entries().size();
                TurnRecord record;
                if (raw) {
                    const auto parsed = parse_action(std::string_view(*raw));
                    last[i] = session.step(parsed);
                    record = make_turn_record(entrants[i].id, &parsed, *last[i], session.state(), mark,
                                              session.elapsed_ms(), wall());
                } else {
                    last[i] = session.skip_turn("no response within " +
                                                json(contest.config.agent_turn_timeout).dump() + " s");
                    record = make_turn_record(entrants[i].id, nullptr, *last[i], session.state(), mark,
                                              session.elapsed_ms(), wall());
                }
                writer.turn(record);
                log.turns.push_back(std::move(record));
                if (!session.state().active()) entrants[i].endpoint->finish(session.render_state(leaderboard()));
            }
        }
    } catch (const SandboxError& e) {
        footer.aborted = true;
        footer.abort_reason = std::string("sandbox failure: ") + e.what();
    }
    footer.leaderboard = leaderboard();
    writer.footer(footer);
    log.footer = footer;
    return log;
}

std::string qualification_problem(const Contest& contest) {
    if (!contest.qualification_problem.empty()) return contest.qualification_problem;
    for (const auto& p : contest.problems) {
        if (p.level == DifficultyLevel::Bronze) return p.id;
    }
    throw Error("contest '" + contest.id + "' has no Bronze problem to qualify on");
}

QualificationResult run_qualification(Entrant& entrant, const Contest& contest, const ArenaServices& services,
                                      MatchOptions options) {
    QualificationResult out;
    out.problem_id = qualification_problem(contest);
    options.kind = "qualification";
    options.visible_problems = {out.problem_id};
    std::vector<Entrant> one;
    one.push_back(std::move(entrant));
    out.log = run_match(one, contest, services, options);
    entrant = std::move(one.front());
    const auto states = replay_states(out.log);
    out.qualified = out.log.complete() && states.at(entrant.id).solved.count(out.problem_id) > 0;
    return out;
}

SeriesResult run_series(const SeriesSpec& spec, const Contest& contest, const ArenaServices& services,
                        const AgentFactory& factory, std::vector<MatchLog>* logs) {
    SeriesResult result;
    result.label = spec.label;
    for (int i = 0; i < spec.runs; ++i) {
        const std::uint64_t seed = spec.seeds.empty() ? spec.base_seed + static_cast<std::uint64_t>(i)
                                                      : spec.seeds.at(static_cast<std::size_t>(i));
        auto entrants = make_entrants(spec.agents, factory, seed);
        MatchOptions options;
        options.seed = seed;
        options.simulated_clock = spec.simulated_clock;
        if (spec.log_dir) {
            const auto label = spec.label.empty() ? std::string("series") : spec.label;
            options.log_path = *spec.log_dir / (label + "-run" + std::to_string(i) + "-seed" + std::to_string(seed) + ".jsonl");
        }
        auto log = run_match(entrants, contest, services, options);
        if (!log.complete()) throw Error("run " + std::to_string(i) + " aborted: " + log.footer->abort_reason);
        result.seeds.push_back(seed);
        result.runs.push_back(log.footer->leaderboard);
        if (logs) logs->push_back(std::move(log));
    }
    return result;
}

AblationGrid load_grid(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw Error("grid " + path.string() + ": " + e.what());
    }
    const auto base = path.parent_path();
    AblationGrid grid;
    grid.contest_dir = base / j.at("contest").get<std::string>();
    if (j.contains("agents_file")) grid.agents_file = base / j.at("agents_file").get<std::string>();
    grid.agents = j.at("agents").get<std::vector<std::string>>();
    grid.runs = j.value("runs", 1);
    grid.base_seed = j.value("base_seed", std::uint64_t{0});
    for (const auto& c : j.at("configs")) {
        grid.configs.push_back({c.at("label").get<std::string>(), c.value("config", json::object())});
    }
    if (grid.configs.empty()) throw Error("grid " + path.string() + ": no configs");
    if (grid.runs < 1) throw Error("grid " + path.string() + ": runs must be >= 1");
    return grid;
}

std::vector<SeriesResult> run_grid(const AblationGrid& grid, const ArenaServices& services,
                                   const std::optional<std::filesystem::path>& log_dir) {
    const AgentFactory factory(grid.agents_file.empty() ? std::map<std::string, AgentDefinition>{}
                                                        : load_agent_definitions(grid.agents_file));
    const auto manifest = load_contest(grid.contest_dir);
    std::vector<SeriesResult> out;
    for (const auto& entry : grid.configs) {
        const auto contest = load_contest(grid.contest_dir, patch_config(manifest.config, entry.patch));
        SeriesSpec spec;
        spec.label = entry.label;
        spec.agents = grid.agents;
        spec.runs = grid.runs;
        spec.base_seed = grid.base_seed;
        spec.log_dir = log_dir;
        out.push_back(run_series(spec, contest, services, factory));
    }
    return out;
}

}  // namespace arena
