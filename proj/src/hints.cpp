#include "arena/hints.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "arena/io.hpp"

namespace arena {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string_view kind_name(DocKind kind) {
    switch (kind) {
        case DocKind::Strategy: return "strategy";
        case DocKind::TextbookSection: return "textbook_section";
        case DocKind::LibraryProblem: return "library_problem";
    }
    return "?";
}

std::string lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

std::string index_text(const CorpusDoc& doc) { return doc.title + "\n" + doc.body; }

std::string full_text(const CorpusDoc& doc) { return "# " + doc.title + "\n\n" + doc.body; }

}  // namespace

void to_json(json& j, const CorpusDoc& doc) {
    json tags = {{"knowledge", doc.knowledge}};
    if (doc.difficulty) tags["difficulty"] = to_string(*doc.difficulty);
    j = json{{"doc_id", doc.doc_id}, {"kind", kind_name(doc.kind)}, {"title", doc.title},
             {"body", doc.body},     {"tags", tags}};
    if (doc.contest_id) j["contest_id"] = *doc.contest_id;
}

void from_json(const json& j, CorpusDoc& doc) {
    doc.doc_id = j.at("doc_id").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "strategy") {
        doc.kind = DocKind::Strategy;
    } else if (kind == "textbook_section") {
        doc.kind = DocKind::TextbookSection;
    } else if (kind == "library_problem") {
        doc.kind = DocKind::LibraryProblem;
    } else {
        throw Error("corpus doc " + doc.doc_id + ": unknown kind '" + kind + "'");
    }
    doc.title = j.value("title", std::string{});
    doc.body = j.at("body").get<std::string>();
    if (trim(doc.body).empty()) throw Error("corpus doc " + doc.doc_id + ": body is empty");
    doc.difficulty.reset();
    doc.knowledge.clear();
    if (j.contains("tags")) {
        const auto& tags = j.at("tags");
        if (tags.contains("difficulty") && !tags.at("difficulty").is_null()) {
            doc.difficulty = parse_level(tags.at("difficulty").get<std::string>());
            if (!doc.difficulty) throw Error("corpus doc " + doc.doc_id + ": unknown difficulty");
        }
        if (tags.contains("knowledge")) doc.knowledge = tags.at("knowledge").get<std::vector<std::string>>();
    }
    doc.contest_id.reset();
    if (j.contains("contest_id") && !j.at("contest_id").is_null()) {
        doc.contest_id = j.at("contest_id").get<std::string>();
    }
    if (doc.kind == DocKind::LibraryProblem) {
        if (!doc.difficulty) throw Error("library problem " + doc.doc_id + ": difficulty tag required");
        if (lower(doc.body).find("solution") == std::string::npos) {
            throw Error("library problem " + doc.doc_id + ": body must include a solution");
        }
    }
}

std::vector<CorpusDoc> load_corpus_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open corpus " + path.string());
    std::vector<CorpusDoc> docs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            docs.push_back(json::parse(line).get<CorpusDoc>());
        } catch (const std::exception& e) {
            throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return docs;
}

Lexicon::Lexicon(std::vector<std::string> terms) {
    for (auto& term : terms) {
        auto tokens = tokenize(term);
        if (tokens.empty()) continue;
        std::string canonical;
        for (const auto& t : tokens) canonical += (canonical.empty() ? "" : " ") + t;
        if (std::find(terms_.begin(), terms_.end(), canonical) != terms_.end()) continue;
        terms_.push_back(std::move(canonical));
        tokenized_.push_back(std::move(tokens));
    }
}

Lexicon Lexicon::load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open lexicon " + path.string());
    std::vector<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        terms.push_back(std::move(t));
    }
    return Lexicon(std::move(terms));
}

std::vector<std::string> Lexicon::extract_terms(std::string_view problem_text) const {
    const auto tokens = tokenize(problem_text);
    std::vector<std::pair<std::size_t, std::size_t>> hits;  // (first position, term index)
    for (std::size_t t = 0; t < tokenized_.size(); ++t) {
        const auto& pattern = tokenized_[t];
        auto it = std::search(tokens.begin(), tokens.end(), pattern.begin(), pattern.end());
        if (it != tokens.end()) hits.emplace_back(static_cast<std::size_t>(it - tokens.begin()), t);
    }
    // Same start: longer (more specific) term first, then lexicon order.
    std::sort(hits.begin(), hits.end(), [this](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        if (tokenized_[a.second].size() != tokenized_[b.second].size()) {
            return tokenized_[a.second].size() > tokenized_[b.second].size();
        }
        return a.second < b.second;
    });
    std::vector<std::string> out;
    for (const auto& [pos, t] : hits) out.push_back(terms_[t]);
    return out;
}

Corpora::Corpora(std::vector<CorpusDoc> docs, Lexicon lexicon) : lexicon_(std::move(lexicon)) {
    for (auto& doc : docs) {
        switch (doc.kind) {
            case DocKind::Strategy: strategy_.push_back(std::move(doc)); break;
            case DocKind::TextbookSection: textbook_.push_back(std::move(doc)); break;
            case DocKind::LibraryProblem: library_.push_back(std::move(doc)); break;
        }
    }
    auto build = [](const std::vector<CorpusDoc>& section) -> std::optional<Bm25Index> {
        if (section.empty()) return std::nullopt;
        std::vector<Bm25Index::Document> docs;
        for (const auto& d : section) docs.push_back({d.doc_id, index_text(d)});
        return Bm25Index::build(docs);
    };
    textbook_index_ = build(textbook_);
    library_index_ = build(library_);
}

Corpora Corpora::load(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<CorpusDoc> docs;
    for (const auto& f : files) {
        auto part = load_corpus_file(f);
        docs.insert(docs.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    const auto lexicon_path = dir / "lexicon.txt";
    return Corpora(std::move(docs), fs::exists(lexicon_path) ? Lexicon::load(lexicon_path) : Lexicon{});
}

json to_json(const HintResponse& response) {
    return json{{"level", response.level},
                {"content", response.content},
                {"cost", response.cost},
                {"source_doc_id", response.source_doc_id}};
}

std::string truncate_utf8(std::string_view text, std::size_t max_chars) {
    std::size_t chars = 0;
    std::size_t i = 0;
    while (i < text.size() && chars < max_chars) {
        const auto c = static_cast<unsigned char>(text[i]);
        std::size_t width = 1;
        if (c >= 0xf0) {
            width = 4;
        } else if (c >= 0xe0) {
            width = 3;
        } else if (c >= 0xc0) {
            width = 2;
        }
        i += std::min(width, text.size() - i);
        ++chars;
    }
    return std::string(text.substr(0, i));
}

void validate_hint_request(const HintRequest& request, const Contest& contest) {
    using Kind = HintError::Kind;
    if (request.level < 0 || request.level > 4) {
        throw HintError(Kind::LevelOutOfRange, "hint level must be in 0..4, got " + std::to_string(request.level));
    }
    const bool needs_problem = request.level == 1 || request.level == 3;
    const bool needs_knowledge = request.level == 2 || request.level == 4;
    if (needs_problem) {
        if (!request.problem_id) throw HintError(Kind::MissingParameter, "problem_id is required for this level");
        if (!contest.find(*request.problem_id)) {
            throw HintError(Kind::UnknownProblem, "unknown problem id '" + *request.problem_id + "'");
        }
    }
    if (needs_knowledge && (!request.hint_knowledge || tokenize(*request.hint_knowledge).empty())) {
        throw HintError(Kind::MissingParameter, "hint_knowledge is required for this level");
    }
    if (request.level == 4 && !request.problem_difficulty) {
        throw HintError(Kind::MissingParameter, "problem_difficulty is required for level 4");
    }
}

HintResponse get_hint(const HintRequest& request, const Contest& contest, const Corpora& corpora,
                      CreditLedger& ledger, const ContestConfig& config) {
    validate_hint_request(request, contest);
    HintResponse response;
    response.level = request.level;
    response.cost = charge_hint(ledger, request.level, config);

    auto empty = [&](const std::string& why) {
        return HintError(HintError::Kind::EmptyResult, why, response.cost);
    };
    auto top = [&](const std::optional<Bm25Index>& index, const std::string& query,
                   const Bm25Index::Filter& filter = {}) -> std::optional<SearchHit> {
        if (!index || tokenize(query).empty()) return std::nullopt;
        auto hits = index->search(query, 1, filter);
        if (hits.empty()) return std::nullopt;
        return hits.front();
    };

    switch (request.level) {
        case 0: {
            if (corpora.strategy().empty()) throw empty("no strategy documents available");
            for (const auto& doc : corpora.strategy()) {
                if (!response.content.empty()) response.content += "\n\n";
                response.content += full_text(doc);
            }
            response.source_doc_id = corpora.strategy().front().doc_id;
            break;
        }
        case 1: {
            const auto& problem = contest.at(*request.problem_id);
            std::string query;
            for (const auto& term : corpora.lexicon().extract_terms(problem.statement)) {
                query += (query.empty() ? "" : " ") + term;
            }
            auto hit = top(corpora.textbook_index(), query);
            if (!hit) throw empty("no textbook section matches this problem");
            const auto& doc = corpora.textbook()[hit->doc_index];
            response.content = truncate_utf8(full_text(doc), kTextbookExcerptChars);
            response.source_doc_id = doc.doc_id;
            break;
        }
        case 2: {
            auto hit = top(corpora.textbook_index(), *request.hint_knowledge);
            if (!hit) throw empty("no textbook section matches '" + *request.hint_knowledge + "'");
            const auto& doc = corpora.textbook()[hit->doc_index];
            response.content = full_text(doc);
            response.source_doc_id = doc.doc_id;
            break;
        }
        case 3: {
            const auto& problem = contest.at(*request.problem_id);
            std::string query = problem.statement;
            for (const auto& sample : problem.samples) query += "\n" + sample.input + "\n" + sample.expected_output;
            const auto& library = corpora.library();
            auto hit = top(corpora.library_index(), query, [&](std::size_t i) {
                return !(library[i].contest_id && *library[i].contest_id == contest.id);
            });
            if (!hit) throw empty("no similar problem found outside this contest");
            response.content = full_text(library[hit->doc_index]);
            response.source_doc_id = hit->doc_id;
            break;
        }
        case 4: {
            const auto wanted = lower(trim(*request.hint_knowledge));
            const auto& library = corpora.library();
            std::optional<std::size_t> best;
            double best_score = 0.0;
            for (std::size_t i = 0; i < library.size(); ++i) {
                const auto& doc = library[i];
                if (doc.difficulty != request.problem_difficulty) continue;
                const bool tagged = std::any_of(doc.knowledge.begin(), doc.knowledge.end(),
                                                [&](const std::string& k) { return lower(trim(k)) == wanted; });
                if (!tagged) continue;
                const double s = corpora.library_index()->score(wanted, i);
                if (!best || s > best_score || (s == best_score && doc.doc_id < library[*best].doc_id)) {
                    best = i;
                    best_score = s;
                }
            }
            if (!best) throw empty("no library problem tagged '" + wanted + "' at that difficulty");
            response.content = full_text(library[*best]);
            response.source_doc_id = library[*best].doc_id;
            break;
        }
        default: break;
    }
    return response;
}

}  // namespace arena
