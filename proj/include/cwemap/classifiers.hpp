#pragma once

#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "cwemap/binio.hpp"
#include "cwemap/classifiers/decision_tree.hpp"
#include "cwemap/classifiers/linear_svm.hpp"
#include "cwemap/classifiers/mlp.hpp"
#include "cwemap/classifiers/naive_bayes.hpp"
#include "cwemap/classifiers/types.hpp"

namespace cwemap {

enum class algorithm { gaussian_nb, multinomial_nb, linear_svm, decision_tree, mlp };

inline const char* algorithm_name(algorithm a) {
    switch (a) {
    case algorithm::gaussian_nb: return "gaussian_nb";
    case algorithm::multinomial_nb: return "multinomial_nb";
    case algorithm::linear_svm: return "linear_svm";
    case algorithm::decision_tree: return "decision_tree";
    case algorithm::mlp: return "mlp";
    }
    return "?";
}

inline algorithm algorithm_from_name(const std::string& name) {
    if (name == "gaussian_nb") return algorithm::gaussian_nb;
    if (name == "multinomial_nb") return algorithm::multinomial_nb;
    if (name == "linear_svm") return algorithm::linear_svm;
    if (name == "decision_tree") return algorithm::decision_tree;
    if (name == "mlp") return algorithm::mlp;
    fail(errc::unknown_algorithm,
         "unknown algorithm '" + name +
             "' (valid: gaussian_nb, multinomial_nb, linear_svm, decision_tree, mlp)");
}

using trained_model =
    std::variant<gaussian_nb_model, multinomial_nb_model, linear_svm_model, decision_tree_model, mlp_model>;

inline algorithm model_kind(const trained_model& m) {
    return static_cast<algorithm>(m.index());
}

inline const std::vector<int>& model_classes(const trained_model& m) {
    return std::visit([](const auto& mm) -> const std::vector<int>& { return mm.class_labels; }, m);
}

inline int predict(const trained_model& m, const std::vector<double>& x) {
    return std::visit([&](const auto& mm) { return predict_one(mm, x); }, m);
}

struct training_options {
    std::size_t svm_epochs = 50;
    double svm_lambda = 1e-4;
    std::size_t tree_max_depth = 16;
    std::size_t tree_min_leaf = 1;
    mlp_config mlp;
};

inline trained_model train(algorithm algo, const feature_matrix& x, const label_vector& y,
                           std::uint64_t seed, const training_options& opts = {}) {
    switch (algo) {
    case algorithm::gaussian_nb: return train_gaussian_nb(x, y);
    case algorithm::multinomial_nb: return train_multinomial_nb(x, y);
    case algorithm::linear_svm: return train_linear_svm(x, y, opts.svm_epochs, opts.svm_lambda, seed);
    case algorithm::decision_tree: return train_decision_tree(x, y, opts.tree_max_depth, opts.tree_min_leaf);
    case algorithm::mlp: {
        mlp_config cfg = opts.mlp;
        cfg.seed = seed;
        return train_mlp(x, y, cfg);
    }
    }
    fail(errc::unknown_algorithm, "bad algorithm tag");
}

// Provenance carried inside a model file so a prediction bundle can reject
// a model trained against a different vocabulary or feature space.
struct model_meta {
    feature_kind features = feature_kind::latent;
    std::string vocab_hash;
    std::uint32_t lsa_k = 0;
};

inline constexpr char model_magic[9] = "CWEMMDL\0";
inline constexpr std::uint8_t model_format_version = 1;

namespace detail {

inline void write_labels(std::ostream& out, const std::vector<int>& labels) {
    write_u32(out, static_cast<std::uint32_t>(labels.size()));
    for (int l : labels) write_i64(out, l);
}

inline std::vector<int> read_labels(std::istream& in) {
    std::vector<int> labels(read_u32(in));
    for (int& l : labels) l = static_cast<int>(read_i64(in));
    return labels;
}

inline void write_vec(std::ostream& out, const std::vector<double>& v) {
    write_u32(out, static_cast<std::uint32_t>(v.size()));
    for (double d : v) write_f64(out, d);
}

inline std::vector<double> read_vec(std::istream& in) {
    std::vector<double> v(read_u32(in));
    for (double& d : v) d = read_f64(in);
    return v;
}

} // namespace detail

inline void save_model(const trained_model& model, const std::string& path, const model_meta& meta = {}) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot write " + path);
    out.write(model_magic, 8);
    write_u8(out, model_format_version);
    write_u8(out, static_cast<std::uint8_t>(model_kind(model)));
    write_u8(out, static_cast<std::uint8_t>(meta.features));
    write_str(out, meta.vocab_hash);
    write_u32(out, meta.lsa_k);

    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            detail::write_labels(out, m.class_labels);
            if constexpr (std::is_same_v<T, gaussian_nb_model>) {
                write_u32(out, static_cast<std::uint32_t>(m.feature_dim));
                detail::write_vec(out, m.log_priors);
                for (const auto& v : m.means) detail::write_vec(out, v);
                for (const auto& v : m.variances) detail::write_vec(out, v);
            } else if constexpr (std::is_same_v<T, multinomial_nb_model>) {
                write_u32(out, static_cast<std::uint32_t>(m.feature_dim));
                detail::write_vec(out, m.log_priors);
                for (const auto& v : m.log_probs) detail::write_vec(out, v);
            } else if constexpr (std::is_same_v<T, linear_svm_model>) {
                write_u32(out, static_cast<std::uint32_t>(m.feature_dim));
                detail::write_vec(out, m.biases);
                for (const auto& v : m.weights) detail::write_vec(out, v);
            } else if constexpr (std::is_same_v<T, decision_tree_model>) {
                write_u32(out, static_cast<std::uint32_t>(m.feature_dim));
                write_u32(out, static_cast<std::uint32_t>(m.max_depth));
                write_u32(out, static_cast<std::uint32_t>(m.min_leaf));
                write_u32(out, static_cast<std::uint32_t>(m.nodes.size()));
                for (const auto& n : m.nodes) {
                    write_u8(out, n.leaf ? 1 : 0);
                    write_u32(out, static_cast<std::uint32_t>(n.feature));
                    write_f64(out, n.threshold);
                    write_u32(out, n.left);
                    write_u32(out, n.right);
                    write_i64(out, n.label);
                }
            } else if constexpr (std::is_same_v<T, mlp_model>) {
                write_u32(out, static_cast<std::uint32_t>(m.config.batch_size));
                write_u32(out, static_cast<std::uint32_t>(m.config.epochs));
                write_f64(out, m.config.learning_rate);
                write_f64(out, m.config.momentum);
                write_u64(out, m.config.seed);
                write_u32(out, static_cast<std::uint32_t>(m.layer_sizes.size()));
                for (std::size_t s : m.layer_sizes) write_u32(out, static_cast<std::uint32_t>(s));
                for (const auto& v : m.weights) detail::write_vec(out, v);
                for (const auto& v : m.biases) detail::write_vec(out, v);
            }
        },
        model);
    if (!out) fail(errc::io_error, "write failed: " + path);
}

struct loaded_model {
    trained_model model;
    model_meta meta;
};

inline loaded_model load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::missing_file, "cannot open " + path);
    expect_magic(in, model_magic, model_format_version, "model file");
    auto kind = static_cast<algorithm>(read_u8(in));
    loaded_model out;
    out.meta.features = static_cast<feature_kind>(read_u8(in));
    out.meta.vocab_hash = read_str(in);
    out.meta.lsa_k = read_u32(in);

    switch (kind) {
    case algorithm::gaussian_nb: {
        gaussian_nb_model m;
        m.class_labels = detail::read_labels(in);
        m.feature_dim = read_u32(in);
        m.log_priors = detail::read_vec(in);
        for (std::size_t c = 0; c < m.class_labels.size(); ++c) m.means.push_back(detail::read_vec(in));
        for (std::size_t c = 0; c < m.class_labels.size(); ++c) m.variances.push_back(detail::read_vec(in));
        out.model = std::move(m);
        break;
    }
    case algorithm::multinomial_nb: {
        multinomial_nb_model m;
        m.class_labels = detail::read_labels(in);
        m.feature_dim = read_u32(in);
        m.log_priors = detail::read_vec(in);
        for (std::size_t c = 0; c < m.class_labels.size(); ++c) m.log_probs.push_back(detail::read_vec(in));
        out.model = std::move(m);
        break;
    }
    case algorithm::linear_svm: {
        linear_svm_model m;
        m.class_labels = detail::read_labels(in);
        m.feature_dim = read_u32(in);
        m.biases = detail::read_vec(in);
        for (std::size_t c = 0; c < m.class_labels.size(); ++c) m.weights.push_back(detail::read_vec(in));
        out.model = std::move(m);
        break;
    }
    case algorithm::decision_tree: {
        decision_tree_model m;
        m.class_labels = detail::read_labels(in);
        m.feature_dim = read_u32(in);
        m.max_depth = read_u32(in);
        m.min_leaf = read_u32(in);
        m.nodes.resize(read_u32(in));
        for (auto& n : m.nodes) {
            n.leaf = read_u8(in) != 0;
            n.feature = read_u32(in);
            n.threshold = read_f64(in);
            n.left = read_u32(in);
            n.right = read_u32(in);
            n.label = static_cast<int>(read_i64(in));
        }
        out.model = std::move(m);
        break;
    }
    case algorithm::mlp: {
        mlp_model m;
        m.class_labels = detail::read_labels(in);
        m.config.batch_size = read_u32(in);
        m.config.epochs = read_u32(in);
        m.config.learning_rate = read_f64(in);
        m.config.momentum = read_f64(in);
        m.config.seed = read_u64(in);
        m.layer_sizes.resize(read_u32(in));
        for (auto& s : m.layer_sizes) s = read_u32(in);
        m.config.hidden_sizes.assign(m.layer_sizes.begin() + 1, m.layer_sizes.end() - 1);
        for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) m.weights.push_back(detail::read_vec(in));
        for (std::size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) m.biases.push_back(detail::read_vec(in));
        out.model = std::move(m);
        break;
    }
    default:
        fail(errc::version_mismatch, "model file: unknown model kind");
    }
    return out;
}

} // namespace cwemap
