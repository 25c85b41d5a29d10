#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "cwemap/classifiers/types.hpp"

namespace cwemap {

struct tree_node {
    bool leaf = true;
    std::size_t feature = 0;
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    int label = 0;
};

struct decision_tree_model {
    std::vector<tree_node> nodes; // node 0 is the root
    std::vector<int> class_labels;
    std::size_t feature_dim = 0;
    std::size_t max_depth = 16;
    std::size_t min_leaf = 1;
};

namespace detail {

// Canonical impurity expressions. The split search compares these values
// exactly, so they are computed the same way everywhere: class counts in
// ascending label order, p*p subtracted from 1.
inline double gini_from_counts(const std::vector<std::size_t>& counts, std::size_t n) {
    double g = 1.0;
    for (std::size_t c : counts) {
        double p = static_cast<double>(c) / static_cast<double>(n);
        g -= p * p;
    }
    return g;
}

inline double weighted_gini(const std::vector<std::size_t>& left, std::size_t n_left,
                            const std::vector<std::size_t>& right, std::size_t n_right) {
    double total = static_cast<double>(n_left + n_right);
    return (static_cast<double>(n_left) * gini_from_counts(left, n_left) +
            static_cast<double>(n_right) * gini_from_counts(right, n_right)) /
           total;
}

// Majority class index, smallest label on ties.
inline std::size_t majority_index(const std::vector<std::size_t>& counts) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < counts.size(); ++c)
        if (counts[c] > counts[best]) best = c;
    return best;
}

struct tree_builder {
    const feature_matrix& x;
    const std::vector<std::size_t>& label_idx; // per row, index into class_labels
    const std::vector<int>& class_labels;
    std::size_t max_depth;
    std::size_t min_leaf;
    std::vector<tree_node> nodes;

    std::uint32_t build(const std::vector<std::size_t>& samples, std::size_t depth) {
        std::vector<std::size_t> counts(class_labels.size(), 0);
        for (std::size_t i : samples) ++counts[label_idx[i]];
        std::size_t distinct = 0;
        for (std::size_t c : counts)
            if (c > 0) ++distinct;

        std::uint32_t id = static_cast<std::uint32_t>(nodes.size());
        nodes.emplace_back();

        double parent_gini = gini_from_counts(counts, samples.size());
        bool can_split = depth < max_depth && distinct > 1 && samples.size() >= 2 * min_leaf;

        std::size_t best_feature = 0;
        double best_threshold = 0.0, best_score = 0.0;
        bool found = false;
        if (can_split) {
            // Features ascending, thresholds ascending, strict improvement:
            // the first best candidate wins, which is the tie-break rule.
            for (std::size_t f = 0; f < x.cols; ++f) {
                std::vector<double> vals;
                vals.reserve(samples.size());
                for (std::size_t i : samples) vals.push_back(x.at(i, f));
                std::sort(vals.begin(), vals.end());
                vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
                for (std::size_t t = 0; t + 1 < vals.size(); ++t) {
                    double threshold = (vals[t] + vals[t + 1]) / 2.0;
                    std::vector<std::size_t> lc(class_labels.size(), 0), rc(class_labels.size(), 0);
                    std::size_t nl = 0, nr = 0;
                    for (std::size_t i : samples) {
                        if (x.at(i, f) <= threshold) { ++lc[label_idx[i]]; ++nl; }
                        else { ++rc[label_idx[i]]; ++nr; }
                    }
                    if (nl < min_leaf || nr < min_leaf) continue;
                    double score = weighted_gini(lc, nl, rc, nr);
                    if (!found || score < best_score) {
                        found = true;
                        best_score = score;
                        best_feature = f;
                        best_threshold = threshold;
                    }
                }
            }
        }

        if (!found || !(best_score < parent_gini)) {
            nodes[id].leaf = true;
            nodes[id].label = class_labels[majority_index(counts)];
            return id;
        }

        std::vector<std::size_t> left_samples, right_samples;
        for (std::size_t i : samples) {
            if (x.at(i, best_feature) <= best_threshold) left_samples.push_back(i);
            else right_samples.push_back(i);
        }
        std::uint32_t l = build(left_samples, depth + 1);
        std::uint32_t r = build(right_samples, depth + 1);
        nodes[id].leaf = false;
        nodes[id].feature = best_feature;
        nodes[id].threshold = best_threshold;
        nodes[id].left = l;
        nodes[id].right = r;
        return id;
    }
};

} // namespace detail

// CART with Gini impurity and axis-aligned midpoint thresholds. Ties go to
// the lowest feature index, then the lowest threshold; leaves predict the
// majority class, smaller label on ties.
inline decision_tree_model train_decision_tree(const feature_matrix& x, const label_vector& y,
                                               std::size_t max_depth = 16, std::size_t min_leaf = 1) {
    detail::check_training_input(x, y, /*need_two_classes=*/false);
    if (min_leaf < 1) fail(errc::invalid_argument, "min_leaf must be >= 1");

    decision_tree_model m;
    m.feature_dim = x.cols;
    m.class_labels = y.class_set();
    m.max_depth = max_depth;
    m.min_leaf = min_leaf;

    std::vector<std::size_t> label_idx(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
        auto it = std::lower_bound(m.class_labels.begin(), m.class_labels.end(), y.labels[i]);
        label_idx[i] = static_cast<std::size_t>(it - m.class_labels.begin());
    }

    detail::tree_builder builder{x, label_idx, m.class_labels, max_depth, min_leaf, {}};
    std::vector<std::size_t> all(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) all[i] = i;
    builder.build(all, 0);
    m.nodes = std::move(builder.nodes);
    return m;
}

inline int predict_one(const decision_tree_model& m, const std::vector<double>& x) {
    if (x.size() != m.feature_dim)
        fail(errc::dimension_mismatch, "feature row length " + std::to_string(x.size()) +
                                           " != " + std::to_string(m.feature_dim));
    std::uint32_t node = 0;
    while (!m.nodes[node].leaf)
        node = x[m.nodes[node].feature] <= m.nodes[node].threshold ? m.nodes[node].left : m.nodes[node].right;
    return m.nodes[node].label;
}

} // namespace cwemap
