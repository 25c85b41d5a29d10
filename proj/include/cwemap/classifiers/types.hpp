#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cwemap/errors.hpp"

namespace cwemap {

enum class feature_kind { counts, latent, tfidf };

inline const char* feature_kind_name(feature_kind k) {
    switch (k) {
    case feature_kind::counts: return "counts";
    case feature_kind::latent: return "latent";
    case feature_kind::tfidf: return "tfidf";
    }
    return "?";
}

inline feature_kind feature_kind_from_name(const std::string& name) {
    if (name == "counts") return feature_kind::counts;
    if (name == "latent") return feature_kind::latent;
    if (name == "tfidf") return feature_kind::tfidf;
    fail(errc::invalid_argument, "unknown feature kind '" + name + "'");
}

// N x F dense feature rows. Finite values only.
struct feature_matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values; // row-major
    feature_kind kind = feature_kind::latent;

    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }

    std::vector<double> row(std::size_t i) const {
        return {values.begin() + static_cast<std::ptrdiff_t>(i * cols),
                values.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols)};
    }
};

struct label_vector {
    std::vector<int> labels;

    std::vector<int> class_set() const {
        std::set<int> s(labels.begin(), labels.end());
        return {s.begin(), s.end()};
    }
};

struct mlp_config {
    std::size_t batch_size = 32;
    std::size_t epochs = 10;
    std::vector<std::size_t> hidden_sizes = {128};
    double learning_rate = 0.01;
    double momentum = 0.9;
    std::uint64_t seed = 0;
};

namespace detail {

inline void check_training_input(const feature_matrix& x, const label_vector& y, bool need_two_classes) {
    if (x.rows < 2) fail(errc::too_few_examples, "need at least 2 training rows");
    if (y.labels.size() != x.rows)
        fail(errc::length_mismatch, std::to_string(y.labels.size()) + " labels for " +
                                        std::to_string(x.rows) + " rows");
    for (double v : x.values)
        if (!std::isfinite(v)) fail(errc::invalid_argument, "feature matrix contains non-finite values");
    if (need_two_classes && y.class_set().size() < 2)
        fail(errc::degenerate_labels, "training labels contain a single class");
}

// Index of the best score, smallest label winning ties: iterate ascending
// label order with a strict comparison.
inline int argmax_label(const std::vector<int>& labels, const std::vector<double>& scores) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best]) best = i;
    return labels[best];
}

} // namespace detail

} // namespace cwemap
