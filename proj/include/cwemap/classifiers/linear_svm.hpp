#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "cwemap/classifiers/types.hpp"
#include "cwemap/rng.hpp"

namespace cwemap {

struct linear_svm_model {
    std::vector<int> class_labels;           // ascending
    std::vector<std::vector<double>> weights; // per class, length F
    std::vector<double> biases;               // per class
    std::size_t feature_dim = 0;
};

// One-vs-rest hinge-loss SGD with Pegasos step size 1/(lambda*t). The bias
// is trained as an augmented constant feature, so it shares the L2 penalty.
inline linear_svm_model train_linear_svm(const feature_matrix& x, const label_vector& y,
                                         std::size_t epochs = 50, double lambda = 1e-4,
                                         std::uint64_t seed = 0) {
    detail::check_training_input(x, y, /*need_two_classes=*/true);
    if (lambda <= 0.0) fail(errc::invalid_argument, "lambda must be positive");

    linear_svm_model m;
    m.feature_dim = x.cols;
    m.class_labels = y.class_set();
    m.weights.assign(m.class_labels.size(), std::vector<double>(x.cols, 0.0));
    m.biases.assign(m.class_labels.size(), 0.0);

    for (std::size_t c = 0; c < m.class_labels.size(); ++c) {
        int positive = m.class_labels[c];
        rng gen(seed + 0x9E3779B97F4A7C15ULL * (c + 1));
        std::vector<std::size_t> order(x.rows);
        std::iota(order.begin(), order.end(), 0);

        std::vector<double>& w = m.weights[c];
        double& b = m.biases[c];
        std::size_t t = 0;
        for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
            gen.shuffle(order);
            for (std::size_t i : order) {
                ++t;
                double eta = 1.0 / (lambda * static_cast<double>(t));
                double target = y.labels[i] == positive ? 1.0 : -1.0;
                double score = b;
                for (std::size_t j = 0; j < x.cols; ++j) score += w[j] * x.at(i, j);
                double shrink = 1.0 - eta * lambda;
                if (target * score < 1.0) {
                    for (std::size_t j = 0; j < x.cols; ++j)
                        w[j] = shrink * w[j] + eta * target * x.at(i, j);
                    b = shrink * b + eta * target;
                } else {
                    for (std::size_t j = 0; j < x.cols; ++j) w[j] *= shrink;
                    b *= shrink;
                }
            }
        }
    }
    return m;
}

inline int predict_one(const linear_svm_model& m, const std::vector<double>& x) {
    if (x.size() != m.feature_dim)
        fail(errc::dimension_mismatch, "feature row length " + std::to_string(x.size()) +
                                           " != " + std::to_string(m.feature_dim));
    std::vector<double> scores(m.class_labels.size());
    for (std::size_t c = 0; c < m.class_labels.size(); ++c) {
        double s = m.biases[c];
        for (std::size_t j = 0; j < m.feature_dim; ++j) s += m.weights[c][j] * x[j];
        scores[c] = s;
    }
    return detail::argmax_label(m.class_labels, scores);
}

} // namespace cwemap
