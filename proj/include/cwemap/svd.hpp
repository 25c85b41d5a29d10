#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cwemap/matrix.hpp"
#include "cwemap/rng.hpp"

namespace cwemap {

struct svd_result {
    matrix u;                           // m x r, orthonormal columns
    std::vector<double> singular_values; // length r, nonincreasing
    matrix v;                           // n x r, orthonormal columns
};

namespace detail {

// One-sided Jacobi on the columns of `a` (m x n, works best with m >= n).
// On return `a` holds U * diag(sigma) and `v` the accumulated rotations.
inline void one_sided_jacobi(matrix& a, matrix& v) {
    const std::size_t n = a.cols(), m = a.rows();
    v = matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    const double tol = 1e-14;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    alpha += a(i, p) * a(i, p);
                    beta += a(i, q) * a(i, q);
                    gamma += a(i, p) * a(i, q);
                }
                if (std::abs(gamma) <= tol * std::sqrt(alpha * beta) || gamma == 0.0) continue;
                rotated = true;
                double zeta = (beta - alpha) / (2.0 * gamma);
                double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = c * t;
                for (std::size_t i = 0; i < m; ++i) {
                    double ap = a(i, p), aq = a(i, q);
                    a(i, p) = c * ap - s * aq;
                    a(i, q) = s * ap + c * aq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }
}

// Extract U, sigma, V from the rotated matrix, sorted by nonincreasing sigma.
inline svd_result finish_jacobi(matrix& a, matrix& v) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += a(i, j) * a(i, j);
        sigma[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    svd_result out;
    out.u = matrix(m, n);
    out.v = matrix(n, n);
    out.singular_values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t src = order[j];
        out.singular_values[j] = sigma[src];
        if (sigma[src] > 0.0)
            for (std::size_t i = 0; i < m; ++i) out.u(i, j) = a(i, src) / sigma[src];
        for (std::size_t i = 0; i < n; ++i) out.v(i, j) = v(i, src);
    }
    return out;
}

inline svd_result truncate(svd_result full, std::size_t k) {
    svd_result out;
    out.u = matrix(full.u.rows(), k);
    out.v = matrix(full.v.rows(), k);
    out.singular_values.assign(full.singular_values.begin(),
                               full.singular_values.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t i = 0; i < full.u.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) out.u(i, j) = full.u(i, j);
    for (std::size_t i = 0; i < full.v.rows(); ++i)
        for (std::size_t j = 0; j < k; ++j) out.v(i, j) = full.v(i, j);
    return out;
}

} // namespace detail

// Fixes the sign ambiguity of singular vectors: the largest-magnitude entry
// of each left singular vector is made positive (first such entry on ties).
inline void fix_signs(svd_result& r) {
    for (std::size_t j = 0; j < r.u.cols(); ++j) {
        std::size_t best = 0;
        double best_mag = -1.0;
        for (std::size_t i = 0; i < r.u.rows(); ++i) {
            double mag = std::abs(r.u(i, j));
            if (mag > best_mag) { best_mag = mag; best = i; }
        }
        if (r.u(best, j) < 0.0) {
            for (std::size_t i = 0; i < r.u.rows(); ++i) r.u(i, j) = -r.u(i, j);
            for (std::size_t i = 0; i < r.v.rows(); ++i) r.v(i, j) = -r.v(i, j);
        }
    }
}

// Thin SVD of a dense matrix by one-sided Jacobi, exact to working precision.
// Returns min(m, n) triplets, singular values nonincreasing.
inline svd_result jacobi_svd(const matrix& input) {
    if (input.rows() >= input.cols()) {
        matrix a = input;
        matrix v;
        detail::one_sided_jacobi(a, v);
        return detail::finish_jacobi(a, v);
    }
    // Work on the transpose and swap the factors back.
    matrix a = input.transposed();
    matrix v;
    detail::one_sided_jacobi(a, v);
    svd_result r = detail::finish_jacobi(a, v);
    std::swap(r.u, r.v);
    return r;
}

// Halko-style randomized truncated SVD by subspace iteration over a sparse
// term-doc matrix. Deterministic for a fixed seed.
inline svd_result randomized_svd(const term_doc_matrix& a, std::size_t k, std::uint64_t seed,
                                 int power_iters = 8, std::size_t oversample = 10) {
    const std::size_t min_dim = std::min(a.rows, a.cols);
    const std::size_t l = std::min(k + oversample, min_dim);

    rng gen(seed);
    matrix omega(a.cols, l);
    for (std::size_t i = 0; i < a.cols; ++i)
        for (std::size_t j = 0; j < l; ++j) omega(i, j) = gen.next_real(-1.0, 1.0);

    matrix q = sparse_times_dense(a, omega); // D x L
    orthonormalize_columns(q);
    for (int it = 0; it < power_iters; ++it) {
        matrix z = sparse_transpose_times_dense(a, q); // V x L
        orthonormalize_columns(z);
        q = sparse_times_dense(a, z); // D x L
        orthonormalize_columns(q);
    }

    // B = Q^T A is L x V; factor its transpose W = A^T Q (V x L, few columns).
    matrix w = sparse_transpose_times_dense(a, q);
    matrix rot;
    detail::one_sided_jacobi(w, rot);
    svd_result core = detail::finish_jacobi(w, rot); // W = core.u * diag * core.v^T
    // A ~ Q B = (Q * core.v) * diag * core.u^T.
    svd_result out;
    out.u = matmul(q, core.v);
    out.v = std::move(core.u);
    out.singular_values = std::move(core.singular_values);
    if (k < l) out = detail::truncate(std::move(out), k);
    return out;
}

} // namespace cwemap
