#pragma once

#include <array>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "cwemap/csv.hpp"
#include "cwemap/errors.hpp"
#include "cwemap/hash.hpp"

namespace cwemap {

// Fixed English stopword list, 127 words. "shall", "must" and "should" are
// deliberately absent: they carry requirement semantics. The same list ships
// as data/stopwords_en.txt; the two must stay in sync (a test checks).
inline constexpr std::array<std::string_view, 127> default_stopword_list = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am", "an",
    "and", "any", "are", "as", "at", "be", "because", "been", "before", "being",
    "below", "between", "both", "but", "by", "can", "cannot", "could", "did", "do",
    "does", "doing", "down", "during", "each", "few", "for", "from", "further",
    "had", "has", "have", "having", "he", "her", "here", "hers", "herself", "him",
    "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself",
    "just", "me", "more", "most", "my", "myself", "no", "nor", "not", "now", "of",
    "off", "on", "once", "only", "or", "other", "our", "ours", "ourselves", "out",
    "over", "own", "same", "she", "so", "some", "such", "than", "that", "the",
    "their", "theirs", "them", "themselves", "then", "there", "these", "they",
    "this", "those", "through", "to", "too", "under", "until", "up", "very", "via",
    "was", "we", "were", "what", "when", "where", "which", "while", "who", "whom",
    "why", "with", "would", "you", "your", "yours", "yourself", "yourselves",
};

inline const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words(default_stopword_list.begin(), default_stopword_list.end());
    return words;
}

// One lowercase word per line, UTF-8.
inline std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::missing_file, "cannot open " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        std::string w = trim(line);
        if (!w.empty()) words.insert(w);
    }
    return words;
}

// Content fingerprint recorded in run provenance.
inline std::string stopword_hash(const std::set<std::string>& words) {
    fnv1a h;
    for (const auto& w : words) {
        h.update(w);
        h.update("\n");
    }
    return h.hex();
}

} // namespace cwemap
