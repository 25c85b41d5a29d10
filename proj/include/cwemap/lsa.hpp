#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "cwemap/binio.hpp"
#include "cwemap/svd.hpp"

namespace cwemap {

using latent_vector = std::vector<double>;

// Rank-k semantic space of a term-doc matrix. term_factors holds the right
// singular vectors (V x k, sign-fixed); doc_factors row i is document i's
// fold-in coordinates, so projecting a training row reproduces its row here.
struct latent_model {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::vector<double> singular_values; // length k, nonincreasing
    matrix term_factors;                 // V x k
    matrix doc_factors;                  // D x k

    std::size_t vocab_dimension() const { return term_factors.rows(); }
    std::size_t doc_count() const { return doc_factors.rows(); }
};

// Fold-in projection: coords = Sigma^-1 * (term_factors^T * v). Directions
// with a zero singular value contribute nothing.
inline latent_vector project(const latent_model& model, const sparse_vector& v) {
    if (v.dimension != model.vocab_dimension())
        fail(errc::dimension_mismatch, "vector dimension " + std::to_string(v.dimension) +
                                           " != vocabulary size " + std::to_string(model.vocab_dimension()));
    latent_vector coords(model.k, 0.0);
    for (const auto& [idx, val] : v.entries)
        for (std::size_t j = 0; j < model.k; ++j) coords[j] += val * model.term_factors(idx, j);
    for (std::size_t j = 0; j < model.k; ++j) {
        double s = model.singular_values[j];
        coords[j] = s > 0.0 ? coords[j] / s : 0.0;
    }
    return coords;
}

// Dense Jacobi SVD for small problems, seeded randomized subspace iteration
// (8 power iterations, oversampling 10) beyond that.
inline constexpr std::size_t lsa_dense_cutoff = 64;

inline latent_model fit_lsa(const term_doc_matrix& m, std::size_t k, std::uint64_t seed) {
    if (m.rows == 0 || m.cols == 0) fail(errc::empty_corpus, "matrix has no rows or columns");
    const std::size_t min_dim = std::min(m.rows, m.cols);
    if (k < 1 || k > min_dim)
        fail(errc::rank_too_large,
             "k=" + std::to_string(k) + " outside [1, " + std::to_string(min_dim) + "]");
    bool any_nonzero = false;
    for (const auto& row : m.data)
        if (!row.entries.empty()) { any_nonzero = true; break; }
    if (!any_nonzero) fail(errc::zero_matrix, "all matrix entries are zero");

    svd_result svd;
    if (min_dim <= lsa_dense_cutoff) {
        svd = jacobi_svd(densify(m));
        if (k < svd.singular_values.size()) svd = detail::truncate(std::move(svd), k);
    } else {
        svd = randomized_svd(m, k, seed);
    }
    fix_signs(svd);

    latent_model model;
    model.k = k;
    model.seed = seed;
    model.singular_values = std::move(svd.singular_values);
    model.term_factors = std::move(svd.v);
    model.doc_factors = matrix(m.rows, k);
    for (std::size_t i = 0; i < m.rows; ++i) {
        latent_vector coords = project(model, m.data[i]);
        for (std::size_t j = 0; j < k; ++j) model.doc_factors(i, j) = coords[j];
    }
    return model;
}

// a.b / (|a||b|); 0.0 when either norm is zero so that a requirement with no
// in-vocabulary tokens matches nothing instead of crashing.
inline double cosine(const latent_vector& a, const latent_vector& b) {
    if (a.size() != b.size())
        fail(errc::dimension_mismatch,
             "cosine of lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

inline constexpr char lsa_magic[9] = "CWEMLSA\0";
inline constexpr std::uint8_t lsa_format_version = 1;

inline void save_lsa_model(const latent_model& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(errc::io_error, "cannot write " + path);
    out.write(lsa_magic, 8);
    write_u8(out, lsa_format_version);
    write_u32(out, static_cast<std::uint32_t>(model.k));
    write_u64(out, model.seed);
    write_u32(out, static_cast<std::uint32_t>(model.vocab_dimension()));
    write_u32(out, static_cast<std::uint32_t>(model.doc_count()));
    for (double s : model.singular_values) write_f64(out, s);
    for (double v : model.term_factors.data()) write_f64(out, v);
    for (double v : model.doc_factors.data()) write_f64(out, v);
    if (!out) fail(errc::io_error, "write failed: " + path);
}

inline latent_model load_lsa_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::missing_file, "cannot open " + path);
    expect_magic(in, lsa_magic, lsa_format_version, "lsa model");
    latent_model model;
    model.k = read_u32(in);
    model.seed = read_u64(in);
    std::size_t vdim = read_u32(in);
    std::size_t docs = read_u32(in);
    model.singular_values.resize(model.k);
    for (auto& s : model.singular_values) s = read_f64(in);
    model.term_factors = matrix(vdim, model.k);
    for (auto& v : model.term_factors.data()) v = read_f64(in);
    model.doc_factors = matrix(docs, model.k);
    for (auto& v : model.doc_factors.data()) v = read_f64(in);
    return model;
}

} // namespace cwemap
