// arena: command-line front end for contests, matches, analytics and the wire server.

#include <CLI11.hpp>

#include <csignal>
#include <iostream>

#include "arena/agents.hpp"
#include "arena/analytics.hpp"
#include "arena/contest.hpp"
#include "arena/hints.hpp"
#include "arena/io.hpp"
#include "arena/judge.hpp"
#include "arena/orchestrator.hpp"
#include "arena/server.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace arena;

namespace {

struct Common {
    std::string contest = "data/desk";
    std::string corpus;
    std::string prices;
    std::string model = "gpt-5-2025-08-07";
    std::optional<double> alpha;
    std::optional<Credits> credit_limit;
    std::string weights;
    bool trusted_sandbox = false;
};

// Keeps everything a Session points at alive for the whole command.
struct World {
    Contest contest;
    std::optional<Judge> judge;
    std::optional<Corpora> corpora;
    PriceTable prices;
    ArenaServices services;
};

std::unique_ptr<World> make_world(const Common& c) {
    auto w = std::make_unique<World>();
    auto contest = load_contest(c.contest);
    json patch = json::object();
    if (c.alpha) patch["alpha"] = *c.alpha;
    if (c.credit_limit) patch["credit_limit"] = *c.credit_limit;
    if (!c.weights.empty()) patch["score_weights"] = c.weights;
    if (!patch.empty()) contest = load_contest(c.contest, patch_config(contest.config, patch));
    w->contest = std::move(contest);
    w->judge.emplace(Toolchain{}, c.trusted_sandbox ? SandboxPolicy::trusted() : SandboxPolicy{});
    w->judge->enable_cache(true);
    auto corpus_dir = c.corpus.empty() ? fs::path(c.contest).parent_path() / "corpus" : fs::path(c.corpus);
    if (fs::is_directory(corpus_dir)) w->corpora.emplace(Corpora::load(corpus_dir));
    w->prices = c.prices.empty() ? PriceTable::standard() : PriceTable::from_json(json::parse(read_file(c.prices)));
    w->services.judge = &*w->judge;
    w->services.corpora = w->corpora ? &*w->corpora : nullptr;
    w->services.prices = &w->prices;
    w->services.default_model = c.model;
    return w;
}

void add_common(CLI::App* app, Common& c, bool overrides) {
    app->add_option("--contest", c.contest, "contest directory (contest.json + problems/)");
    app->add_option("--corpus", c.corpus, "hint corpus directory (default: <contest>/../corpus)");
    app->add_option("--prices", c.prices, "price table JSON (default: built-in table)");
    app->add_option("--model", c.model, "model id charged when usage omits one");
    app->add_flag("--trusted-sandbox", c.trusted_sandbox, "skip namespace isolation (rlimits only)");
    if (overrides) {
        app->add_option("--alpha", c.alpha, "credits per second of match time");
        app->add_option("--credit-limit", c.credit_limit, "termination credit limit");
        app->add_option("--weights", c.weights, "score weights preset: flat|default|exp")
            ->check(CLI::IsMember({"flat", "default", "exp"}));
    }
}

AgentFactory make_factory(const std::string& agents_file, const std::string& contest_dir) {
    fs::path path = agents_file.empty() ? fs::path(contest_dir) / "agents.json" : fs::path(agents_file);
    if (!fs::exists(path)) return AgentFactory{};
    return AgentFactory(load_agent_definitions(path));
}

void print_board(const std::vector<LeaderboardRow>& rows) { std::cout << render_rankings(rows) << "\n"; }

int cmd_judge(const Common& c, const std::string& problem, const std::string& source, const std::string& lang,
              bool run_all) {
    auto w = make_world(c);
    const auto language = parse_language(lang);
    if (!language) throw Error("unknown language '" + lang + "' (cpp17|java|python3)");
    auto config = w->contest.config;
    config.judge.run_all_cases = run_all;
    const auto result = w->judge->judge_submission(w->contest.at(problem), read_file(source), *language, config);
    auto j = to_json(result);
    if (!result.diagnostics.empty()) j["diagnostics"] = result.diagnostics;
    std::cout << j.dump(2) << "\n";
    return result.verdict == Verdict::AC ? 0 : 1;
}

int cmd_hint(const Common& c, int level, const std::string& problem, const std::string& knowledge,
             const std::string& difficulty) {
    auto w = make_world(c);
    if (!w->corpora) throw Error("no corpus directory found; pass --corpus");
    HintRequest request;
    request.level = level;
    if (!problem.empty()) request.problem_id = problem;
    if (!knowledge.empty()) request.hint_knowledge = knowledge;
    if (!difficulty.empty()) {
        request.problem_difficulty = parse_level(difficulty);
        if (!request.problem_difficulty) throw Error("unknown difficulty '" + difficulty + "'");
    }
    CreditLedger ledger;
    try {
        std::cout << to_json(get_hint(request, w->contest, *w->corpora, ledger, w->contest.config)).dump(2) << "\n";
    } catch (const HintError& e) {
        std::cerr << "hint failed: " << e.what() << " (charged " << e.charged() << ")\n";
        return 1;
    }
    return 0;
}

int cmd_run(const Common& c, const std::string& agents_file, std::vector<std::string> agents, int runs,
            std::uint64_t seed, bool skip_qualification, const std::string& out_dir, bool real_time) {
    auto w = make_world(c);
    const auto factory = make_factory(agents_file, c.contest);
    if (agents.empty()) throw Error("at least one --agent is required");

    if (!skip_qualification) {
        std::vector<std::string> qualified;
        const auto ids = assign_ids(agents);
        for (std::size_t i = 0; i < agents.size(); ++i) {
            Entrant e{ids[i], agents[i], factory.make(agents[i], seed)};
            MatchOptions options;
            options.seed = seed;
            options.simulated_clock = !real_time;
            if (!out_dir.empty()) options.log_path = fs::path(out_dir) / ("qualification-" + ids[i] + ".jsonl");
            const auto q = run_qualification(e, w->contest, w->services, options);
            std::cout << "qualification " << ids[i] << " on " << q.problem_id << ": "
                      << (q.qualified ? "qualified" : "not qualified") << "\n";
            if (q.qualified) qualified.push_back(agents[i]);
        }
        agents = qualified;
        if (agents.empty()) {
            std::cout << "no agent qualified\n";
            return 1;
        }
    }

    SeriesSpec spec;
    spec.label = "run";
    spec.agents = agents;
    spec.runs = runs;
    spec.base_seed = seed;
    spec.simulated_clock = !real_time;
    std::vector<MatchLog> logs;
    const auto series = run_series(spec, w->contest, w->services, factory, &logs);
    for (std::size_t i = 0; i < logs.size(); ++i) {
        std::cout << "run " << i << " (seed " << series.seeds[i] << ")\n";
        print_board(series.runs[i]);
        if (!out_dir.empty()) {
            const auto path = fs::path(out_dir) / default_log_name(series.seeds[i]);
            write_log(logs[i], path);
            std::cout << "log: " << path.string() << "\n";
        }
    }
    if (runs > 1) std::cout << to_json(series)["aggregates"].dump(2) << "\n";
    return 0;
}

int cmd_qualify(const Common& c, const std::string& agents_file, const std::string& agent, std::uint64_t seed,
                const std::string& out) {
    auto w = make_world(c);
    const auto factory = make_factory(agents_file, c.contest);
    Entrant e{assign_ids({agent}).front(), agent, factory.make(agent, seed)};
    MatchOptions options;
    options.seed = seed;
    if (!out.empty()) options.log_path = out;
    const auto q = run_qualification(e, w->contest, w->services, options);
    std::cout << json{{"participant", e.id}, {"problem", q.problem_id}, {"qualified", q.qualified}}.dump() << "\n";
    return q.qualified ? 0 : 1;
}

int cmd_profile(const std::string& log_path, const std::string& csv) {
    const auto log = read_log(log_path);
    json out = json::array();
    std::string rows = "participant,attempted,submissions,precision,solve_rate,first_submit_accuracy,"
                       "inference,hint,test,time,penalty,total\n";
    auto cell = [](const std::optional<double>& v) { return v ? std::to_string(*v) : std::string(); };
    for (const auto& p : log.header.participants) {
        const auto m = profile(log, p.id);
        const auto b = breakdown(log, p.id);
        out.push_back({{"participant", p.id}, {"profile", to_json(m)}, {"breakdown", to_json(b)}});
        rows += p.id + "," + std::to_string(m.attempted_problems) + "," + std::to_string(m.submission_count) + "," +
                cell(m.submission_precision) + "," + cell(m.problems_solve_rate) + "," +
                cell(m.first_submit_accuracy) + "," + std::to_string(b.inference) + "," + std::to_string(b.hint) +
                "," + std::to_string(b.test) + "," + std::to_string(b.time) + "," + std::to_string(b.penalty) + "," +
                std::to_string(b.total) + "\n";
    }
    std::cout << out.dump(2) << "\n";
    if (!csv.empty()) write_file(csv, rows);
    return 0;
}

int cmd_replay(const std::string& log_path) {
    const auto log = read_log(log_path);
    if (!log.footer) {
        std::cout << "log has no footer (truncated)\n";
        return 1;
    }
    const auto recomputed = replay_leaderboard(log);
    print_board(recomputed);
    const bool same = recomputed == log.footer->leaderboard;
    std::cout << (same ? "footer matches recomputation\n" : "footer DIFFERS from recomputation\n");
    return same ? 0 : 1;
}

int cmd_ablate(const Common& c, const std::string& grid_path, const std::string& out, const std::string& log_dir) {
    const auto grid = load_grid(grid_path);
    Common local = c;
    local.contest = grid.contest_dir.string();
    auto w = make_world(local);
    const auto series =
        run_grid(grid, w->services, log_dir.empty() ? std::nullopt : std::optional<fs::path>(log_dir));
    const auto csv = ablation_matrix_csv(series);
    std::cout << csv;
    if (!out.empty()) write_file(out, csv);
    return 0;
}

int cmd_swarm(const Common& c, const std::string& agents_file, const std::string& name, std::uint64_t seed,
              const std::string& out) {
    auto w = make_world(c);
    const auto factory = make_factory(agents_file, c.contest);
    auto it = factory.definitions().find(name);
    if (it == factory.definitions().end()) throw Error("no agent '" + name + "' in the agents file");
    SwarmOptions options;
    options.participant_id = name;
    options.seed = seed;
    if (!out.empty()) options.log_path = out;
    const auto log = simulate_swarm(it->second.profile, w->contest, w->services, *it->second.book, options);
    const auto s = summarize_swarm(log);
    std::cout << json{{"profile", name},
                      {"ticks", s.ticks},
                      {"simulated_ms", s.wall_ms},
                      {"attempt_tokens", s.attempt_tokens},
                      {"overhead_tokens", s.overhead_tokens},
                      {"total_tokens", s.total_tokens()},
                      {"score", s.score},
                      {"consumed_credit", s.consumed},
                      {"wave_widths", s.wave_widths}}
                     .dump(2)
              << "\n";
    return 0;
}

TcpServer* g_tcp = nullptr;

void on_signal(int) {
    if (g_tcp) g_tcp->stop();
}

int cmd_serve(const Common& c, const std::string& transport, const std::string& host, int port,
              const std::string& name, const std::string& log, bool simulated) {
    auto w = make_world(c);
    ServerOptions options;
    options.simulated_clock = simulated;
    if (!log.empty()) options.log_path = log;
    ArenaServer server(w->contest, w->services, options);
    if (transport == "stdio") {
        serve_stream(server, std::cin, std::cout, name);
        server.close();
        return 0;
    }
    TcpServer tcp(server, host, port);
    g_tcp = &tcp;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "arena listening on " << host << ":" << tcp.port() << "\n";
    tcp.run();
    g_tcp = nullptr;
    server.close();
    return 0;
}

int cmd_validate(const Common& c) {
    const auto contest = load_contest(c.contest);
    std::cout << "contest " << contest.id << ": " << contest.problems.size() << " problems, qualification "
              << qualification_problem(contest) << "\n";
    for (const auto& p : contest.problems) {
        std::cout << "  " << p.id << " " << to_string(p.level) << " samples=" << p.samples.size()
                  << " tests=" << p.hidden_tests.size() << " limits=" << p.time_limit_ms << "ms/"
                  << p.memory_limit_mib << "MiB\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"arena: credit-budgeted programming contests for coding agents"};
    app.require_subcommand(1);
    Common common;

    std::string problem, source, lang = "cpp17", knowledge, difficulty, agents_file, out, grid, log_dir, csv,
                                  log_path, transport = "stdio", host = "127.0.0.1", name, swarm_name;
    std::vector<std::string> agents;
    int level = 0, runs = 1, port = 7777;
    std::uint64_t seed = 0;
    bool run_all = false, skip_qualification = false, real_time = false, simulated = false;

    auto* judge = app.add_subcommand("judge", "judge one source file against a problem's hidden tests");
    add_common(judge, common, false);
    judge->add_option("--problem", problem)->required();
    judge->add_option("--source", source)->required()->check(CLI::ExistingFile);
    judge->add_option("--lang", lang)->check(CLI::IsMember({"cpp17", "java", "python3"}));
    judge->add_flag("--run-all", run_all, "keep going after the first failing test");

    auto* hint = app.add_subcommand("hint", "retrieve a hint without a session");
    add_common(hint, common, false);
    hint->add_option("--level", level)->required()->check(CLI::Range(0, 4));
    hint->add_option("--problem", problem);
    hint->add_option("--knowledge", knowledge);
    hint->add_option("--difficulty", difficulty);

    auto* run = app.add_subcommand("run", "run a match series");
    add_common(run, common, true);
    run->add_option("--agents-file", agents_file, "agents.json (default: <contest>/agents.json)");
    run->add_option("--agent", agents, "scripted:<name> or exec:<command>; repeat for each participant")->required();
    run->add_option("--runs", runs)->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "base seed; run i uses seed + i");
    run->add_flag("--skip-qualification", skip_qualification);
    run->add_flag("--real-time", real_time, "charge real elapsed time instead of the simulated clock");
    run->add_option("--out", out, "directory for match logs");

    auto* qualify = app.add_subcommand("qualify", "run the qualification session for one agent");
    add_common(qualify, common, true);
    qualify->add_option("--agents-file", agents_file);
    qualify->add_option("--agent", name)->required();
    qualify->add_option("--seed", seed);
    qualify->add_option("--out", out, "log file");

    auto* prof = app.add_subcommand("profile", "strategy metrics and credit breakdown from a match log");
    prof->add_option("log", log_path)->required()->check(CLI::ExistingFile);
    prof->add_option("--csv", csv);

    auto* replay = app.add_subcommand("replay", "recompute a log's leaderboard and compare with its footer");
    replay->add_option("log", log_path)->required()->check(CLI::ExistingFile);

    auto* ablate = app.add_subcommand("ablate", "run an ablation grid and write the score matrix");
    add_common(ablate, common, false);
    ablate->add_option("--grid", grid)->required()->check(CLI::ExistingFile);
    ablate->add_option("--out", out, "CSV output");
    ablate->add_option("--logs", log_dir, "directory for per-run logs");

    auto* swarm = app.add_subcommand("swarm", "simulate a swarm profile alone on the contest");
    add_common(swarm, common, true);
    swarm->add_option("--agents-file", agents_file);
    swarm->add_option("--profile", swarm_name)->required();
    swarm->add_option("--seed", seed);
    swarm->add_option("--out", out, "log file");

    auto* serve = app.add_subcommand("serve", "expose sessions over the line protocol");
    add_common(serve, common, true);
    serve->add_option("--transport", transport)->check(CLI::IsMember({"stdio", "tcp"}));
    serve->add_option("--host", host);
    serve->add_option("--port", port);
    serve->add_option("--name", name, "participant joined automatically on stdio");
    serve->add_option("--log", log_path, "match log file");
    serve->add_flag("--simulated-clock", simulated, "one simulated second per turn instead of real time");

    auto* validate = app.add_subcommand("validate", "load and check a contest directory");
    add_common(validate, common, false);

    CLI11_PARSE(app, argc, argv);
    try {
        if (judge->parsed()) return cmd_judge(common, problem, source, lang, run_all);
        if (hint->parsed()) return cmd_hint(common, level, problem, knowledge, difficulty);
        if (run->parsed()) {
            return cmd_run(common, agents_file, agents, runs, seed, skip_qualification, out, real_time);
        }
        if (qualify->parsed()) return cmd_qualify(common, agents_file, name, seed, out);
        if (prof->parsed()) return cmd_profile(log_path, csv);
        if (replay->parsed()) return cmd_replay(log_path);
        if (ablate->parsed()) return cmd_ablate(common, grid, out, log_dir);
        if (swarm->parsed()) return cmd_swarm(common, agents_file, swarm_name, seed, out);
        if (serve->parsed()) return cmd_serve(common, transport, host, port, name, log_path, simulated);
        if (validate->parsed()) return cmd_validate(common);
    } catch (const std::exception& e) {
        std::cerr << "arena: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
