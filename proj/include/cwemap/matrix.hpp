#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cwemap/errors.hpp"
#include "cwemap/text.hpp"

namespace cwemap {

// Dense row-major matrix of doubles. Small and purpose-built: the SVD and
// the latent-space plumbing need a handful of operations, nothing more.
class matrix {
public:
    matrix() = default;
    matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<double>& data() { return a_; }
    const std::vector<double>& data() const { return a_; }

    matrix transposed() const {
        matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : a_) s += v * v;
        return std::sqrt(s);
    }

    bool operator==(const matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

inline matrix matmul(const matrix& x, const matrix& y) {
    if (x.cols() != y.rows()) fail(errc::dimension_mismatch, "matmul shape mismatch");
    matrix out(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) {
            double xv = x(i, k);
            if (xv == 0.0) continue;
            for (std::size_t j = 0; j < y.cols(); ++j) out(i, j) += xv * y(k, j);
        }
    return out;
}

// out = A * B where A is a sparse term-doc matrix (rows x cols) and B is dense.
inline matrix sparse_times_dense(const term_doc_matrix& a, const matrix& b) {
    if (a.cols != b.rows()) fail(errc::dimension_mismatch, "sparse_times_dense shape mismatch");
    matrix out(a.rows, b.cols());
    for (std::size_t i = 0; i < a.rows; ++i)
        for (const auto& [j, v] : a.data[i].entries)
            for (std::size_t c = 0; c < b.cols(); ++c) out(i, c) += v * b(j, c);
    return out;
}

// out = A^T * B.
inline matrix sparse_transpose_times_dense(const term_doc_matrix& a, const matrix& b) {
    if (a.rows != b.rows()) fail(errc::dimension_mismatch, "sparse_transpose_times_dense shape mismatch");
    matrix out(a.cols, b.cols());
    for (std::size_t i = 0; i < a.rows; ++i)
        for (const auto& [j, v] : a.data[i].entries)
            for (std::size_t c = 0; c < b.cols(); ++c) out(j, c) += v * b(i, c);
    return out;
}

inline matrix densify(const term_doc_matrix& a) {
    matrix out(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (const auto& [j, v] : a.data[i].entries) out(i, j) = v;
    return out;
}

// In-place modified Gram-Schmidt with a second re-orthogonalization pass.
// Columns that vanish (rank deficiency) are left as zero columns.
inline void orthonormalize_columns(matrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    for (std::size_t j = 0; j < cols; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                double dot = 0.0;
                for (std::size_t i = 0; i < rows; ++i) dot += m(i, p) * m(i, j);
                if (dot != 0.0)
                    for (std::size_t i = 0; i < rows; ++i) m(i, j) -= dot * m(i, p);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < rows; ++i) norm += m(i, j) * m(i, j);
        norm = std::sqrt(norm);
        if (norm > 1e-12) {
            for (std::size_t i = 0; i < rows; ++i) m(i, j) /= norm;
        } else {
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = 0.0;
        }
    }
}

} // namespace cwemap
