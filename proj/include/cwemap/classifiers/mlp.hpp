#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cwemap/classifiers/types.hpp"
#include "cwemap/rng.hpp"

namespace cwemap {

// Feedforward net: input -> hidden layers (ReLU) -> softmax over classes.
// Weight l is (layer_sizes[l+1] x layer_sizes[l]) row-major.
struct mlp_model {
    std::vector<int> class_labels;        // ascending
    std::vector<std::size_t> layer_sizes; // [F, hidden..., C]
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    mlp_config config;
    std::vector<double> epoch_losses; // mean training loss per epoch, not serialized

    std::size_t feature_dim() const { return layer_sizes.front(); }
};

namespace detail {

struct mlp_gradients {
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
    double loss = 0.0;
};

inline std::vector<double> mlp_forward(const mlp_model& m, const std::vector<double>& x,
                                       std::vector<std::vector<double>>* activations = nullptr) {
    std::vector<double> a = x;
    if (activations) activations->push_back(a);
    for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
        const std::size_t in = m.layer_sizes[l], out = m.layer_sizes[l + 1];
        std::vector<double> z(out);
        for (std::size_t o = 0; o < out; ++o) {
            double s = m.biases[l][o];
            const double* w = &m.weights[l][o * in];
            for (std::size_t i = 0; i < in; ++i) s += w[i] * a[i];
            z[o] = s;
        }
        bool last = l + 2 == m.layer_sizes.size();
        if (!last)
            for (double& v : z) v = v > 0.0 ? v : 0.0;
        a = std::move(z);
        if (activations) activations->push_back(a);
    }
    return a;
}

inline double log_sum_exp(const std::vector<double>& z) {
    double zmax = *std::max_element(z.begin(), z.end());
    double s = 0.0;
    for (double v : z) s += std::exp(v - zmax);
    return zmax + std::log(s);
}

// Mean cross-entropy loss and gradients over the given sample indices.
// Also the reference point for the finite-difference gradient check.
inline mlp_gradients mlp_loss_and_gradients(const mlp_model& m, const feature_matrix& x,
                                            const std::vector<std::size_t>& target_idx,
                                            const std::vector<std::size_t>& batch) {
    mlp_gradients g;
    g.weights.resize(m.weights.size());
    g.biases.resize(m.biases.size());
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        g.weights[l].assign(m.weights[l].size(), 0.0);
        g.biases[l].assign(m.biases[l].size(), 0.0);
    }

    const double scale = 1.0 / static_cast<double>(batch.size());
    for (std::size_t idx : batch) {
        std::vector<std::vector<double>> acts;
        std::vector<double> logits = mlp_forward(m, x.row(idx), &acts);
        double lse = log_sum_exp(logits);
        g.loss += (lse - logits[target_idx[idx]]) * scale;

        // delta at the output: softmax - onehot
        std::vector<double> delta(logits.size());
        for (std::size_t o = 0; o < logits.size(); ++o) delta[o] = std::exp(logits[o] - lse);
        delta[target_idx[idx]] -= 1.0;

        for (std::size_t l = m.weights.size(); l-- > 0;) {
            const std::size_t in = m.layer_sizes[l], out = m.layer_sizes[l + 1];
            const std::vector<double>& a_in = acts[l];
            for (std::size_t o = 0; o < out; ++o) {
                g.biases[l][o] += delta[o] * scale;
                double* gw = &g.weights[l][o * in];
                for (std::size_t i = 0; i < in; ++i) gw[i] += delta[o] * a_in[i] * scale;
            }
            if (l == 0) break;
            std::vector<double> prev(in, 0.0);
            for (std::size_t o = 0; o < out; ++o) {
                const double* w = &m.weights[l][o * in];
                for (std::size_t i = 0; i < in; ++i) prev[i] += w[i] * delta[o];
            }
            // ReLU derivative on the hidden activation (> 0 iff it fired)
            for (std::size_t i = 0; i < in; ++i)
                if (acts[l][i] <= 0.0) prev[i] = 0.0;
            delta = std::move(prev);
        }
    }
    return g;
}

} // namespace detail

// Seeded Glorot-uniform initialization, minibatch SGD with momentum,
// fresh seeded shuffle each epoch. Bit-deterministic for a fixed config.
inline mlp_model train_mlp(const feature_matrix& x, const label_vector& y, const mlp_config& cfg) {
    detail::check_training_input(x, y, /*need_two_classes=*/true);
    if (cfg.batch_size < 1 || cfg.epochs < 1 || cfg.learning_rate <= 0.0)
        fail(errc::invalid_argument, "mlp config: batch_size >= 1, epochs >= 1, learning_rate > 0");

    mlp_model m;
    m.class_labels = y.class_set();
    m.config = cfg;
    m.layer_sizes.push_back(x.cols);
    for (std::size_t h : cfg.hidden_sizes) {
        if (h < 1) fail(errc::invalid_argument, "hidden layer size must be >= 1");
        m.layer_sizes.push_back(h);
    }
    m.layer_sizes.push_back(m.class_labels.size());

    rng gen(cfg.seed);
    for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
        const std::size_t in = m.layer_sizes[l], out = m.layer_sizes[l + 1];
        double limit = std::sqrt(6.0 / static_cast<double>(in + out));
        std::vector<double> w(in * out);
        for (double& v : w) v = gen.next_real(-limit, limit);
        m.weights.push_back(std::move(w));
        m.biases.emplace_back(out, 0.0);
    }

    std::vector<std::size_t> target_idx(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i) {
        auto it = std::lower_bound(m.class_labels.begin(), m.class_labels.end(), y.labels[i]);
        target_idx[i] = static_cast<std::size_t>(it - m.class_labels.begin());
    }

    std::vector<std::vector<double>> vel_w, vel_b;
    for (std::size_t l = 0; l < m.weights.size(); ++l) {
        vel_w.emplace_back(m.weights[l].size(), 0.0);
        vel_b.emplace_back(m.biases[l].size(), 0.0);
    }

    std::vector<std::size_t> order(x.rows);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        gen.shuffle(order);
        double epoch_loss = 0.0;
        std::size_t n_batches = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
            std::size_t end = std::min(start + cfg.batch_size, order.size());
            std::vector<std::size_t> batch(order.begin() + static_cast<std::ptrdiff_t>(start),
                                           order.begin() + static_cast<std::ptrdiff_t>(end));
            auto g = detail::mlp_loss_and_gradients(m, x, target_idx, batch);
            epoch_loss += g.loss;
            ++n_batches;
            for (std::size_t l = 0; l < m.weights.size(); ++l) {
                for (std::size_t i = 0; i < m.weights[l].size(); ++i) {
                    vel_w[l][i] = cfg.momentum * vel_w[l][i] - cfg.learning_rate * g.weights[l][i];
                    m.weights[l][i] += vel_w[l][i];
                }
                for (std::size_t i = 0; i < m.biases[l].size(); ++i) {
                    vel_b[l][i] = cfg.momentum * vel_b[l][i] - cfg.learning_rate * g.biases[l][i];
                    m.biases[l][i] += vel_b[l][i];
                }
            }
        }
        m.epoch_losses.push_back(epoch_loss / static_cast<double>(n_batches));
    }
    return m;
}

inline int predict_one(const mlp_model& m, const std::vector<double>& x) {
    if (x.size() != m.feature_dim())
        fail(errc::dimension_mismatch, "feature row length " + std::to_string(x.size()) +
                                           " != " + std::to_string(m.feature_dim()));
    std::vector<double> logits = detail::mlp_forward(m, x);
    return detail::argmax_label(m.class_labels, logits);
}

} // namespace cwemap
