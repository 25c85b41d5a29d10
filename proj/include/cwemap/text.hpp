#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cwemap/errors.hpp"
#include "cwemap/hash.hpp"
#include "cwemap/stopwords.hpp"

namespace cwemap {

// Lowercase, split on anything that is not an ASCII letter, drop tokens
// shorter than 2 characters, drop stopwords. Deterministic by construction.
inline std::vector<std::string> tokenize(const std::string& text, const std::set<std::string>& stopwords) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.size() >= 2 && stopwords.find(current) == stopwords.end())
            tokens.push_back(current);
        current.clear();
    };
    for (char ch : text) {
        if (ch >= 'a' && ch <= 'z') current += ch;
        else if (ch >= 'A' && ch <= 'Z') current += static_cast<char>(ch - 'A' + 'a');
        else flush();
    }
    flush();
    return tokens;
}

inline std::vector<std::string> tokenize(const std::string& text) {
    return tokenize(text, default_stopwords());
}

// Bijective term -> column index map plus document frequencies. Indices are
// assigned in ascending lexicographic term order.
struct vocabulary {
    std::map<std::string, std::size_t> term_to_index;
    std::vector<std::size_t> doc_freq; // by index
    std::size_t total_docs = 0;

    std::size_t size() const { return term_to_index.size(); }

    std::string content_hash() const {
        fnv1a h;
        for (const auto& [term, idx] : term_to_index) {
            h.update(term);
            h.update_u64(idx);
            h.update_u64(doc_freq[idx]);
        }
        h.update_u64(total_docs);
        return h.hex();
    }
};

inline vocabulary build_vocabulary(const std::vector<std::vector<std::string>>& docs, std::size_t min_df = 1) {
    if (docs.empty()) fail(errc::empty_corpus, "no documents");
    std::map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
        std::set<std::string> seen(doc.begin(), doc.end());
        for (const auto& t : seen) ++df[t];
    }
    vocabulary vocab;
    vocab.total_docs = docs.size();
    for (const auto& [term, freq] : df) {
        if (freq >= min_df) {
            std::size_t idx = vocab.term_to_index.size();
            vocab.term_to_index.emplace(term, idx);
            vocab.doc_freq.push_back(freq);
        }
    }
    if (vocab.term_to_index.empty())
        fail(errc::empty_vocabulary, "no term reaches min_df=" + std::to_string(min_df));
    return vocab;
}

// Sorted (index, value) pairs, strictly increasing indices, no stored zeros.
struct sparse_vector {
    std::size_t dimension = 0;
    std::vector<std::pair<std::size_t, double>> entries;

    double at(std::size_t index) const {
        auto it = std::lower_bound(entries.begin(), entries.end(), index,
                                   [](const auto& e, std::size_t i) { return e.first < i; });
        return (it != entries.end() && it->first == index) ? it->second : 0.0;
    }

    double norm() const {
        double s = 0.0;
        for (const auto& [i, v] : entries) s += v * v;
        return std::sqrt(s);
    }

    bool operator==(const sparse_vector&) const = default;
};

// Bag-of-words counts over the vocabulary; out-of-vocabulary tokens are dropped.
inline sparse_vector vectorize(const std::vector<std::string>& doc, const vocabulary& vocab) {
    std::unordered_map<std::size_t, double> counts;
    for (const auto& token : doc) {
        auto it = vocab.term_to_index.find(token);
        if (it != vocab.term_to_index.end()) counts[it->second] += 1.0;
    }
    sparse_vector v;
    v.dimension = vocab.size();
    v.entries.assign(counts.begin(), counts.end());
    std::sort(v.entries.begin(), v.entries.end());
    return v;
}

enum class weighting { raw_counts, tfidf };

inline const char* weighting_name(weighting w) {
    return w == weighting::raw_counts ? "raw_counts" : "tfidf";
}

inline weighting weighting_from_name(const std::string& name) {
    if (name == "raw_counts") return weighting::raw_counts;
    if (name == "tfidf") return weighting::tfidf;
    fail(errc::invalid_argument, "unknown weighting '" + name + "'");
}

// Document-by-term matrix, one sparse row per document.
struct term_doc_matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<sparse_vector> data;
    weighting weight = weighting::raw_counts;
};

// With tfidf, each count c for term t becomes c * ln(N / df_t); entries that
// weight to zero (df_t == N) are not stored.
inline term_doc_matrix build_matrix(const std::vector<std::vector<std::string>>& docs, const vocabulary& vocab,
                                    weighting weight = weighting::raw_counts) {
    if (docs.empty()) fail(errc::empty_corpus, "no documents");
    term_doc_matrix m;
    m.rows = docs.size();
    m.cols = vocab.size();
    m.weight = weight;
    m.data.reserve(docs.size());
    const double n = static_cast<double>(vocab.total_docs);
    for (const auto& doc : docs) {
        sparse_vector v = vectorize(doc, vocab);
        if (weight == weighting::tfidf) {
            std::vector<std::pair<std::size_t, double>> weighted;
            weighted.reserve(v.entries.size());
            for (auto& [idx, count] : v.entries) {
                double idf = std::log(n / static_cast<double>(vocab.doc_freq[idx]));
                if (count * idf != 0.0) weighted.emplace_back(idx, count * idf);
            }
            v.entries = std::move(weighted);
        }
        m.data.push_back(std::move(v));
    }
    return m;
}

} // namespace cwemap
