#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "arena/types.hpp"

namespace arena {

/// Lowercase, split on non-alphanumerics, drop tokens shorter than 2 chars.
/// Bytes >= 0x80 count as alphanumeric so UTF-8 words stay whole.
std::vector<std::string> tokenize(std::string_view text);

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

struct Posting {
    std::size_t doc;
    int term_frequency;
};

struct SearchHit {
    std::string doc_id;
    double score = 0.0;
    std::size_t doc_index = 0;
};

class EmptyQueryError : public Error {
public:
    using Error::Error;
};

/// Okapi BM25 over an immutable inverted index.
///
///   idf(t)      = ln(1 + (N - n_t + 0.5) / (n_t + 0.5))
///   score(d, q) = sum over distinct t in q of
///                 idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * |d| / avgdl))
///
/// Distinct query terms are summed in lexicographic order, so equal inputs give
/// bit-identical scores.
class Bm25Index {
public:
    struct Document {
        std::string doc_id;
        std::string text;
    };

    /// Throws arena::Error for an empty document list.
    static Bm25Index build(const std::vector<Document>& docs, Bm25Params params = {});

    using Filter = std::function<bool(std::size_t doc_index)>;

    /// Top-k documents containing at least one query term, by score desc then
    /// doc_id asc. The filter restricts candidates; corpus statistics are unchanged.
    /// Throws EmptyQueryError when the query has no tokens.
    std::vector<SearchHit> search(std::string_view query, std::size_t k, const Filter& filter = {}) const;

    /// Score of one document for a query (0 when it shares no terms).
    double score(std::string_view query, std::size_t doc_index) const;

    std::size_t size() const { return doc_ids_.size(); }
    const std::string& doc_id(std::size_t i) const { return doc_ids_[i]; }
    const std::vector<int>& doc_lengths() const { return doc_lengths_; }
    double avg_doc_length() const { return avg_doc_length_; }
    const Bm25Params& params() const { return params_; }
    const std::vector<Posting>* postings(const std::string& term) const;
    std::size_t vocabulary_size() const { return postings_.size(); }
    double idf(const std::string& term) const;

private:
    static std::vector<std::string> query_terms(std::string_view query);
    double term_score(const Posting& posting, double idf) const;

    Bm25Params params_;
    std::vector<std::string> doc_ids_;
    std::vector<int> doc_lengths_;
    double avg_doc_length_ = 0.0;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
};

}  // namespace arena
