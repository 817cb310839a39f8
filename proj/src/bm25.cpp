#include "arena/bm25.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

namespace arena {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    auto flush = [&] {
        if (current.size() >= 2) out.push_back(current);
        current.clear();
    };
    for (unsigned char c : text) {
        if (c >= 0x80 || std::isalnum(c)) {
            current.push_back(static_cast<char>(c >= 0x80 ? c : std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    return out;
}

Bm25Index Bm25Index::build(const std::vector<Document>& docs, Bm25Params params) {
    if (docs.empty()) throw Error("cannot build a BM25 index over an empty corpus");
    Bm25Index index;
    index.params_ = params;
    long long total = 0;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        const auto tokens = tokenize(docs[i].text);
        std::map<std::string, int> tf;
        for (const auto& t : tokens) ++tf[t];
        for (const auto& [term, count] : tf) index.postings_[term].push_back({i, count});
        index.doc_ids_.push_back(docs[i].doc_id);
        index.doc_lengths_.push_back(static_cast<int>(tokens.size()));
        total += static_cast<long long>(tokens.size());
    }
    index.avg_doc_length_ = static_cast<double>(total) / static_cast<double>(docs.size());
    return index;
}

const std::vector<Posting>* Bm25Index::postings(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? nullptr : &it->second;
}

double Bm25Index::idf(const std::string& term) const {
    const auto* list = postings(term);
    const double n = list ? static_cast<double>(list->size()) : 0.0;
    const double total = static_cast<double>(doc_ids_.size());
    return std::log(1.0 + (total - n + 0.5) / (n + 0.5));
}

double Bm25Index::term_score(const Posting& posting, double term_idf) const {
    const double tf = posting.term_frequency;
    const double len = doc_lengths_[posting.doc];
    const double norm = avg_doc_length_ > 0 ? len / avg_doc_length_ : 0.0;
    return term_idf * tf * (params_.k1 + 1.0) / (tf + params_.k1 * (1.0 - params_.b + params_.b * norm));
}

std::vector<std::string> Bm25Index::query_terms(std::string_view query) {
    const auto tokens = tokenize(query);
    std::set<std::string> distinct(tokens.begin(), tokens.end());
    return {distinct.begin(), distinct.end()};
}

std::vector<SearchHit> Bm25Index::search(std::string_view query, std::size_t k, const Filter& filter) const {
    const auto terms = query_terms(query);
    if (terms.empty()) throw EmptyQueryError("query has no searchable terms");
    if (k == 0) return {};

    std::vector<double> scores(doc_ids_.size(), 0.0);
    std::vector<char> matched(doc_ids_.size(), 0);
    for (const auto& term : terms) {
        const auto* list = postings(term);
        if (!list) continue;
        const double term_idf = idf(term);
        for (const auto& posting : *list) {
            scores[posting.doc] += term_score(posting, term_idf);
            matched[posting.doc] = 1;
        }
    }

    std::vector<SearchHit> hits;
    for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
        if (!matched[i] || (filter && !filter(i))) continue;
        hits.push_back({doc_ids_[i], scores[i], i});
    }
    auto better = [](const SearchHit& a, const SearchHit& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    };
    if (hits.size() > k) {
        std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(k), hits.end(), better);
        hits.resize(k);
    } else {
        std::sort(hits.begin(), hits.end(), better);
    }
    return hits;
}

double Bm25Index::score(std::string_view query, std::size_t doc_index) const {
    double total = 0.0;
    for (const auto& term : query_terms(query)) {
        const auto* list = postings(term);
        if (!list) continue;
        for (const auto& posting : *list) {
            if (posting.doc == doc_index) total += term_score(posting, idf(term));
        }
    }
    return total;
}

}  // namespace arena
