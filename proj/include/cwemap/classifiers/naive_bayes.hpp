#pragma once

#include <cmath>
#include <vector>

#include "cwemap/classifiers/types.hpp"

namespace cwemap {

struct gaussian_nb_model {
    std::vector<int> class_labels; // ascending
    std::vector<double> log_priors;
    std::vector<std::vector<double>> means;     // per class, length F
    std::vector<std::vector<double>> variances; // per class, length F, smoothed
    std::size_t feature_dim = 0;
};

// Per-class priors and per-feature Gaussian moments. Variances are smoothed
// by 1e-9 times the largest per-feature variance of the whole training set.
inline gaussian_nb_model train_gaussian_nb(const feature_matrix& x, const label_vector& y) {
    detail::check_training_input(x, y, /*need_two_classes=*/true);
    gaussian_nb_model m;
    m.feature_dim = x.cols;
    m.class_labels = y.class_set();
    const std::size_t n_classes = m.class_labels.size();
    const std::size_t f = x.cols;

    // Global per-feature variance for the smoothing term.
    double max_feature_variance = 0.0;
    for (std::size_t j = 0; j < f; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < x.rows; ++i) mean += x.at(i, j);
        mean /= static_cast<double>(x.rows);
        double var = 0.0;
        for (std::size_t i = 0; i < x.rows; ++i) {
            double d = x.at(i, j) - mean;
            var += d * d;
        }
        var /= static_cast<double>(x.rows);
        max_feature_variance = std::max(max_feature_variance, var);
    }
    const double smoothing = 1e-9 * max_feature_variance;

    m.log_priors.resize(n_classes);
    m.means.assign(n_classes, std::vector<double>(f, 0.0));
    m.variances.assign(n_classes, std::vector<double>(f, 0.0));
    for (std::size_t c = 0; c < n_classes; ++c) {
        int label = m.class_labels[c];
        std::size_t count = 0;
        for (std::size_t i = 0; i < x.rows; ++i) {
            if (y.labels[i] != label) continue;
            ++count;
            for (std::size_t j = 0; j < f; ++j) m.means[c][j] += x.at(i, j);
        }
        for (std::size_t j = 0; j < f; ++j) m.means[c][j] /= static_cast<double>(count);
        for (std::size_t i = 0; i < x.rows; ++i) {
            if (y.labels[i] != label) continue;
            for (std::size_t j = 0; j < f; ++j) {
                double d = x.at(i, j) - m.means[c][j];
                m.variances[c][j] += d * d;
            }
        }
        for (std::size_t j = 0; j < f; ++j) {
            m.variances[c][j] = m.variances[c][j] / static_cast<double>(count) + smoothing;
            if (m.variances[c][j] < 1e-300) m.variances[c][j] = 1e-300;
        }
        m.log_priors[c] = std::log(static_cast<double>(count) / static_cast<double>(x.rows));
    }
    return m;
}

inline int predict_one(const gaussian_nb_model& m, const std::vector<double>& x) {
    if (x.size() != m.feature_dim)
        fail(errc::dimension_mismatch, "feature row length " + std::to_string(x.size()) +
                                           " != " + std::to_string(m.feature_dim));
    std::vector<double> scores(m.class_labels.size());
    for (std::size_t c = 0; c < m.class_labels.size(); ++c) {
        double s = m.log_priors[c];
        for (std::size_t j = 0; j < m.feature_dim; ++j) {
            double var = m.variances[c][j];
            double d = x[j] - m.means[c][j];
            s += -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
        }
        scores[c] = s;
    }
    return detail::argmax_label(m.class_labels, scores);
}

struct multinomial_nb_model {
    std::vector<int> class_labels;
    std::vector<double> log_priors;
    std::vector<std::vector<double>> log_probs; // per class, length F
    std::size_t feature_dim = 0;
};

// Laplace-smoothed (alpha = 1) multinomial model over count features.
// Anything that is not a nonnegative integer count is rejected: latent
// LSA features land here by design.
inline multinomial_nb_model train_multinomial_nb(const feature_matrix& x, const label_vector& y) {
    if (x.kind != feature_kind::counts)
        fail(errc::negative_or_non_count_features,
             std::string("multinomial naive bayes requires count features, got ") + feature_kind_name(x.kind));
    for (double v : x.values)
        if (!(v >= 0.0) || v != std::floor(v) || !std::isfinite(v))
            fail(errc::negative_or_non_count_features, "feature values must be nonnegative integers");
    detail::check_training_input(x, y, /*need_two_classes=*/true);

    multinomial_nb_model m;
    m.feature_dim = x.cols;
    m.class_labels = y.class_set();
    const std::size_t n_classes = m.class_labels.size();
    m.log_priors.resize(n_classes);
    m.log_probs.assign(n_classes, std::vector<double>(x.cols, 0.0));
    for (std::size_t c = 0; c < n_classes; ++c) {
        int label = m.class_labels[c];
        std::size_t count = 0;
        std::vector<double> sums(x.cols, 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < x.rows; ++i) {
            if (y.labels[i] != label) continue;
            ++count;
            for (std::size_t j = 0; j < x.cols; ++j) {
                sums[j] += x.at(i, j);
                total += x.at(i, j);
            }
        }
        for (std::size_t j = 0; j < x.cols; ++j)
            m.log_probs[c][j] = std::log((sums[j] + 1.0) / (total + static_cast<double>(x.cols)));
        m.log_priors[c] = std::log(static_cast<double>(count) / static_cast<double>(x.rows));
    }
    return m;
}

inline int predict_one(const multinomial_nb_model& m, const std::vector<double>& x) {
    if (x.size() != m.feature_dim)
        fail(errc::dimension_mismatch, "feature row length " + std::to_string(x.size()) +
                                           " != " + std::to_string(m.feature_dim));
    std::vector<double> scores(m.class_labels.size());
    for (std::size_t c = 0; c < m.class_labels.size(); ++c) {
        double s = m.log_priors[c];
        for (std::size_t j = 0; j < m.feature_dim; ++j) s += x[j] * m.log_probs[c][j];
        scores[c] = s;
    }
    return detail::argmax_label(m.class_labels, scores);
}

} // namespace cwemap
