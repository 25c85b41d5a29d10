#pragma once

// Synthetic mapping corpus: categories with private keyword pools plus
// shared noise words. Used by the mapper tests and the acceptance suite.

#include <string>
#include <vector>

#include "cwemap/catalog.hpp"
#include "cwemap/rng.hpp"

namespace testutil {

struct synthetic_corpus {
    cwemap::cwe_catalog catalog;
    std::vector<cwemap::requirement> requirements;
    std::vector<int> true_category; // per requirement
};

inline synthetic_corpus make_synthetic_corpus(std::uint64_t seed, std::size_t categories = 4,
                                              std::size_t weaknesses_per_category = 5,
                                              std::size_t requirements_per_category = 20) {
    static const std::vector<std::vector<std::string>> private_pools = {
        {"injection", "query", "sanitize", "escape", "parameter", "statement", "markup", "filter"},
        {"encrypt", "cipher", "certificate", "transport", "decrypt", "algorithm", "entropy", "keystore"},
        {"session", "login", "password", "authenticate", "credential", "token", "expire", "lockout"},
        {"memory", "buffer", "allocation", "release", "overflow", "bounds", "pointer", "leak"},
        {"upload", "directory", "traversal", "filename", "archive", "symlink", "extension", "quarantine"},
        {"privilege", "role", "permission", "grant", "revoke", "policy", "owner", "isolation"},
    };
    static const std::vector<std::string> noise_pool = {
        "software", "application", "provide", "ensure",  "support", "process",
        "handle",   "perform",     "manage",  "monitor", "report",  "record",
    };

    synthetic_corpus corpus;
    cwemap::rng gen(seed);

    for (std::size_t c = 0; c < categories; ++c) {
        int category_id = static_cast<int>(100 * (c + 1));
        cwemap::cwe_category category;
        category.id = category_id;
        category.name = "Synthetic Category " + std::to_string(c + 1);
        const auto& pool = private_pools[c % private_pools.size()];

        for (std::size_t w = 0; w < weaknesses_per_category; ++w) {
            cwemap::cwe_weakness weakness;
            weakness.id = category_id + static_cast<int>(w) + 1;
            weakness.name = category.name + " weakness " + std::to_string(w + 1);
            std::string desc;
            std::size_t n_private = 6 + gen.next_below(4);
            for (std::size_t t = 0; t < n_private; ++t)
                desc += pool[gen.next_below(pool.size())] + " ";
            std::size_t n_noise = 2 + gen.next_below(3);
            for (std::size_t t = 0; t < n_noise; ++t)
                desc += noise_pool[gen.next_below(noise_pool.size())] + " ";
            weakness.description = desc;
            weakness.category_ids.insert(category_id);
            category.member_ids.insert(weakness.id);
            corpus.catalog.weaknesses.emplace(weakness.id, std::move(weakness));
        }
        corpus.catalog.categories.emplace(category_id, std::move(category));
    }

    for (std::size_t c = 0; c < categories; ++c) {
        int category_id = static_cast<int>(100 * (c + 1));
        const auto& pool = private_pools[c % private_pools.size()];
        for (std::size_t r = 0; r < requirements_per_category; ++r) {
            cwemap::requirement req;
            req.row_index = corpus.requirements.size();
            req.project_id = "synthetic";
            req.original_class = "F";
            std::string text = "the system shall ";
            std::size_t n_private = 5 + gen.next_below(4);
            for (std::size_t t = 0; t < n_private; ++t)
                text += pool[gen.next_below(pool.size())] + " ";
            std::size_t n_noise = 2 + gen.next_below(3);
            for (std::size_t t = 0; t < n_noise; ++t)
                text += noise_pool[gen.next_below(noise_pool.size())] + " ";
            req.text = text;
            corpus.requirements.push_back(std::move(req));
            corpus.true_category.push_back(category_id);
        }
    }
    return corpus;
}

} // namespace testutil
