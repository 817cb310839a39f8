#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arena/bm25.hpp"
#include "arena/config.hpp"
#include "arena/contest.hpp"
#include "arena/ledger.hpp"

namespace arena {

enum class DocKind { Strategy, TextbookSection, LibraryProblem };

struct CorpusDoc {
    std::string doc_id;
    DocKind kind = DocKind::TextbookSection;
    std::string title;
    std::string body;
    std::optional<DifficultyLevel> difficulty;
    std::vector<std::string> knowledge;
    std::optional<std::string> contest_id;
};

void to_json(nlohmann::json& j, const CorpusDoc& doc);
/// Validates the schema: non-empty body, library problems tagged with a
/// difficulty and containing a solution.
void from_json(const nlohmann::json& j, CorpusDoc& doc);

/// One CorpusDoc per line; blank lines are skipped.
std::vector<CorpusDoc> load_corpus_file(const std::filesystem::path& path);

/// Curated algorithm and data-structure terms, one per line ('#' comments).
class Lexicon {
public:
    Lexicon() = default;
    explicit Lexicon(std::vector<std::string> terms);
    static Lexicon load(const std::filesystem::path& path);

    /// Lexicon entries that occur in the text as whole token sequences, in
    /// order of first occurrence.
    std::vector<std::string> extract_terms(std::string_view problem_text) const;

    const std::vector<std::string>& terms() const { return terms_; }

private:
    std::vector<std::string> terms_;
    std::vector<std::vector<std::string>> tokenized_;
};

/// Strategy docs, textbook sections, and the problem library with their
/// indices. Immutable once built.
class Corpora {
public:
    Corpora(std::vector<CorpusDoc> docs, Lexicon lexicon);

    /// Loads every *.jsonl under `dir` plus `dir/lexicon.txt`.
    static Corpora load(const std::filesystem::path& dir);

    const std::vector<CorpusDoc>& strategy() const { return strategy_; }
    const std::vector<CorpusDoc>& textbook() const { return textbook_; }
    const std::vector<CorpusDoc>& library() const { return library_; }
    const Lexicon& lexicon() const { return lexicon_; }
    const std::optional<Bm25Index>& textbook_index() const { return textbook_index_; }
    const std::optional<Bm25Index>& library_index() const { return library_index_; }

private:
    std::vector<CorpusDoc> strategy_;
    std::vector<CorpusDoc> textbook_;
    std::vector<CorpusDoc> library_;
    Lexicon lexicon_;
    std::optional<Bm25Index> textbook_index_;
    std::optional<Bm25Index> library_index_;
};

struct HintRequest {
    int level = 0;
    std::optional<std::string> problem_id;
    std::optional<std::string> hint_knowledge;
    std::optional<DifficultyLevel> problem_difficulty;
};

struct HintResponse {
    int level = 0;
    std::string content;
    Credits cost = 0;
    std::string source_doc_id;
};

nlohmann::json to_json(const HintResponse& response);

class HintError : public Error {
public:
    enum class Kind { LevelOutOfRange, MissingParameter, UnknownProblem, EmptyResult };

    HintError(Kind kind, const std::string& what, Credits charged = 0)
        : Error(what), kind_(kind), charged_(charged) {}
    Kind kind() const { return kind_; }
    /// Credits already charged when the error was raised (empty results only).
    Credits charged() const { return charged_; }

private:
    Kind kind_;
    Credits charged_;
};

inline constexpr std::size_t kTextbookExcerptChars = 1000;

/// Checks the parameters each level requires without charging anything.
void validate_hint_request(const HintRequest& request, const Contest& contest);

/// Validates, charges hint_costs[level], then retrieves. An empty retrieval
/// throws HintError(EmptyResult) after the charge has been written.
///
///   0  every strategy doc, in full
///   1  problem statement -> lexicon terms -> top textbook section, first 1000 chars
///   2  hint_knowledge -> top textbook section
///   3  statement + samples -> top library problem outside the live contest
///   4  library problems tagged with problem_difficulty and hint_knowledge
HintResponse get_hint(const HintRequest& request, const Contest& contest, const Corpora& corpora,
                      CreditLedger& ledger, const ContestConfig& config);

/// First `max_chars` UTF-8 code points of `text`.
std::string truncate_utf8(std::string_view text, std::size_t max_chars);

}  // namespace arena
