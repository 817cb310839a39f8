#include "arena/contest.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "arena/hash.hpp"
#include "arena/io.hpp"

namespace arena {

namespace fs = std::filesystem;
using nlohmann::json;
using Kind = ManifestError::Kind;

const Problem* Contest::find(std::string_view problem_id) const {
    for (const auto& problem : problems) {
        if (problem.id == problem_id) return &problem;
    }
    return nullptr;
}

const Problem& Contest::at(std::string_view problem_id) const {
    if (const auto* problem = find(problem_id)) return *problem;
    throw Error("unknown problem id '" + std::string(problem_id) + "'");
}

namespace {

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

std::string require_file(const fs::path& path) {
    if (!fs::is_regular_file(path)) {
        throw ManifestError(Kind::MissingFile, "missing file " + path.string());
    }
    return read_file(path);
}

int parse_limit(const std::string& value, const std::string& key, const fs::path& meta) {
    int out = 0;
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end || out <= 0) {
        throw ManifestError(Kind::MalformedLimits,
                            meta.string() + ": " + key + " must be a positive integer, got '" + value + "'");
    }
    return out;
}

// NN.in / NN.out pairs numbered 01, 02, ... with no gaps.
std::vector<TestCase> load_cases(const fs::path& dir, bool required) {
    std::vector<TestCase> cases;
    if (!fs::is_directory(dir)) {
        if (required) throw ManifestError(Kind::MissingFile, "missing directory " + dir.string());
        return cases;
    }
    std::set<std::string> stems;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto ext = entry.path().extension().string();
        if (ext != ".in" && ext != ".out") continue;
        stems.insert(entry.path().stem().string());
    }
    for (std::size_t i = 1; i <= stems.size(); ++i) {
        char stem[16];
        std::snprintf(stem, sizeof stem, "%02zu", i);
        if (!stems.count(stem)) {
            throw ManifestError(Kind::Malformed, dir.string() + ": case " + stem +
                                                     " missing; cases must be numbered 01.. without gaps");
        }
        TestCase tc;
        tc.input = require_file(dir / (std::string(stem) + ".in"));
        tc.expected_output = require_file(dir / (std::string(stem) + ".out"));
        cases.push_back(std::move(tc));
    }
    if (required && cases.empty()) {
        throw ManifestError(Kind::Malformed, dir.string() + ": no hidden test cases");
    }
    return cases;
}

std::uint64_t checksum_of(const Problem& p) {
    auto h = fnv1a(p.statement);
    auto fold = [&h](const std::vector<TestCase>& cases) {
        for (const auto& tc : cases) {
            h = fnv1a(tc.input, fnv1a("\x1f", h));
            h = fnv1a(tc.expected_output, fnv1a("\x1e", h));
        }
    };
    fold(p.samples);
    h = fnv1a("\x1d", h);
    fold(p.hidden_tests);
    return h;
}

}  // namespace

Problem load_problem(const fs::path& dir, const std::string& id) {
    if (!fs::is_directory(dir)) {
        throw ManifestError(Kind::MissingFile, "missing problem directory " + dir.string());
    }
    Problem p;
    p.id = id;
    p.dir = dir;
    p.statement = require_file(dir / "statement.md");

    const auto meta_path = dir / "meta";
    const auto meta = require_file(meta_path);
    bool has_level = false;
    std::size_t pos = 0;
    while (pos < meta.size()) {
        auto eol = meta.find('\n', pos);
        if (eol == std::string::npos) eol = meta.size();
        const auto line = trim(std::string_view(meta).substr(pos, eol - pos));
        pos = eol + 1;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ManifestError(Kind::Malformed, meta_path.string() + ": expected key=value, got '" + line + "'");
        }
        const auto key = trim(std::string_view(line).substr(0, eq));
        const auto value = trim(std::string_view(line).substr(eq + 1));
        if (key == "level") {
            auto level = parse_level(value);
            if (!level) throw ManifestError(Kind::Malformed, meta_path.string() + ": unknown level '" + value + "'");
            p.level = *level;
            has_level = true;
        } else if (key == "time_limit_ms") {
            p.time_limit_ms = parse_limit(value, key, meta_path);
        } else if (key == "memory_limit_mib") {
            p.memory_limit_mib = parse_limit(value, key, meta_path);
        } else if (key == "title") {
            p.title = value;
        } else {
            throw ManifestError(Kind::Malformed, meta_path.string() + ": unknown key '" + key + "'");
        }
    }
    if (!has_level) throw ManifestError(Kind::Malformed, meta_path.string() + ": level is required");

    p.samples = load_cases(dir / "samples", false);
    p.hidden_tests = load_cases(dir / "tests", true);
    p.checksum = checksum_of(p);
    return p;
}

Contest load_contest(const fs::path& dir, const std::optional<ContestConfig>& config_override) {
    const auto manifest_path = dir / "contest.json";
    json manifest;
    try {
        manifest = json::parse(require_file(manifest_path));
    } catch (const json::parse_error& e) {
        throw ManifestError(Kind::Malformed, manifest_path.string() + ": " + e.what());
    }

    Contest contest;
    contest.root = dir;
    try {
        contest.id = manifest.at("id").get<std::string>();
        contest.name = manifest.value("name", contest.id);
        contest.qualification_problem = manifest.value("qualification_problem", std::string{});
        if (manifest.contains("config")) {
            contest.config = manifest.at("config").get<ContestConfig>();
        }
    } catch (const ManifestError&) {
        throw;
    } catch (const std::exception& e) {
        throw ManifestError(Kind::Malformed, manifest_path.string() + ": " + e.what());
    }
    if (config_override) contest.config = *config_override;

    if (auto violations = validate_config(contest.config); !violations.empty()) {
        std::string msg = manifest_path.string() + ": invalid config:";
        for (const auto& v : violations) msg += " " + v.field + " (" + v.message + ");";
        throw ManifestError(Kind::InvalidConfig, msg);
    }

    if (!manifest.contains("problems") || !manifest.at("problems").is_array()) {
        throw ManifestError(Kind::Malformed, manifest_path.string() + ": 'problems' must be a list of ids");
    }
    std::set<std::string> ids;
    for (const auto& item : manifest.at("problems")) {
        const auto id = item.get<std::string>();
        if (!ids.insert(id).second) {
            throw ManifestError(Kind::DuplicateId, manifest_path.string() + ": duplicate problem id '" + id + "'");
        }
        contest.problems.push_back(load_problem(dir / "problems" / id, id));
    }

    std::array<int, 4> counts{};
    for (const auto& p : contest.problems) ++counts[index_of(p.level)];
    if (counts != contest.config.problem_distribution ||
        static_cast<int>(contest.problems.size()) != contest.config.total_problems) {
        std::string msg = manifest_path.string() + ": problem distribution mismatch (have";
        for (auto level : kAllLevels) msg += " " + std::to_string(counts[index_of(level)]);
        msg += ", want";
        for (auto level : kAllLevels) msg += " " + std::to_string(contest.config.problem_distribution[index_of(level)]);
        msg += ")";
        throw ManifestError(Kind::DistributionMismatch, msg);
    }

    if (!contest.qualification_problem.empty()) {
        const auto* q = contest.find(contest.qualification_problem);
        if (q == nullptr || q->level != DifficultyLevel::Bronze) {
            throw ManifestError(Kind::Malformed, manifest_path.string() +
                                                     ": qualification_problem must name a Bronze problem");
        }
    }
    return contest;
}

std::string normalize_output(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        const bool last = eol == std::string_view::npos;
        if (last) eol = text.size();
        auto line = text.substr(pos, eol - pos);
        const auto end = line.find_last_not_of(" \t\r\f\v");
        line = end == std::string_view::npos ? std::string_view{} : line.substr(0, end + 1);
        out.append(line);
        out.push_back('\n');
        if (last) break;
        pos = eol + 1;
    }
    while (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

bool outputs_match(std::string_view expected, std::string_view actual) {
    return normalize_output(expected) == normalize_output(actual);
}

}  // namespace arena
