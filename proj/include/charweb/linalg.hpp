#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "charweb/errors.hpp"
#include "charweb/scalar.hpp"

namespace charweb {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixOf = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowVecOf = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using Mat = MatrixOf<GQ>;
using RowVec = RowVecOf<GQ>;

/// In-place reduced row echelon form over an exact field. Returns the rank;
/// rows past it are zero. Pivot columns, in order, land in `pivots` if given.
template <typename Scalar>
Index rref_in_place(MatrixOf<Scalar>& m, std::vector<Index>* pivots = nullptr) {
    const Index rows = m.rows(), cols = m.cols();
    if (pivots) pivots->clear();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index p = -1;
        for (Index i = r; i < rows; ++i) {
            if (!(m(i, c) == Scalar(0))) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        if (p != r) m.row(p).swap(m.row(r));
        const Index w = cols - c;
        if (!(m(r, c) == Scalar(1))) {
            Scalar inv = Scalar(1) / m(r, c);
            m.block(r, c, 1, w) *= inv;
        }
        for (Index i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == Scalar(0)) continue;
            Scalar f = m(i, c);
            m.block(i, c, 1, w) -= f * m.block(r, c, 1, w);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

/// Rank via forward elimination only (no normalization, no back-substitution);
/// cheaper than rref_in_place when only the rank is wanted. Consumes `m`.
template <typename Scalar>
Index rank_destructive(MatrixOf<Scalar>& m) {
    const Index rows = m.rows(), cols = m.cols();
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        Index p = -1;
        for (Index i = r; i < rows; ++i) {
            if (!(m(i, c) == Scalar(0))) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        if (p != r) m.row(p).swap(m.row(r));
        const Index w = cols - c;
        for (Index i = r + 1; i < rows; ++i) {
            if (m(i, c) == Scalar(0)) continue;
            Scalar f = m(i, c) / m(r, c);
            m.block(i, c, 1, w) -= f * m.block(r, c, 1, w);
        }
        ++r;
    }
    return r;
}

template <typename Scalar>
Index rank_of(MatrixOf<Scalar> m) {
    return rank_destructive(m);
}

/// Columns spanning { x : m * x = 0 }. Result is cols(m) x (cols(m) - rank).
template <typename Scalar>
MatrixOf<Scalar> right_kernel(MatrixOf<Scalar> m) {
    std::vector<Index> pivots;
    const Index rank = rref_in_place(m, &pivots);
    const Index n = m.cols();
    MatrixOf<Scalar> z = MatrixOf<Scalar>::Zero(n, n - rank);
    Index out = 0;
    std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
    for (Index p : pivots) is_pivot[static_cast<std::size_t>(p)] = 1;
    for (Index f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        z(f, out) = Scalar(1);
        for (Index j = 0; j < rank; ++j) z(pivots[static_cast<std::size_t>(j)], out) = -m(j, f);
        ++out;
    }
    return z;
}

/// Solves X * A = B for A with independent rows (d x n), B m x n.
/// Returns std::nullopt when some row of B is outside the row space of A;
/// throws InternalError if A's rows are dependent (callers pass bases).
template <typename Scalar>
std::optional<MatrixOf<Scalar>> solve_left(const MatrixOf<Scalar>& a, const MatrixOf<Scalar>& b) {
    const Index d = a.rows(), n = a.cols(), m = b.rows();
    MatrixOf<Scalar> aug(n, d + m);
    aug.block(0, 0, n, d) = a.transpose();
    aug.block(0, d, n, m) = b.transpose();
    std::vector<Index> pivots;
    rref_in_place(aug, &pivots);
    MatrixOf<Scalar> x = MatrixOf<Scalar>::Zero(m, d);
    std::vector<char> seen(static_cast<std::size_t>(d), 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const Index pc = pivots[i];
        if (pc >= d) return std::nullopt;  // inconsistent system
        seen[static_cast<std::size_t>(pc)] = 1;
        for (Index j = 0; j < m; ++j) x(j, pc) = aug(static_cast<Index>(i), d + j);
    }
    for (char s : seen) {
        if (!s) throw InternalError("solve_left: dependent rows in coefficient matrix");
    }
    return x;
}

/// Inverse of a square matrix with independent rows; X with X * A = I.
template <typename Scalar>
MatrixOf<Scalar> invert(const MatrixOf<Scalar>& a) {
    if (a.rows() != a.cols()) throw SemanticError("invert: matrix not square");
    MatrixOf<Scalar> eye = MatrixOf<Scalar>::Identity(a.rows(), a.rows());
    auto x = solve_left<Scalar>(a, eye);
    if (!x) throw SemanticError("invert: singular matrix");
    return *x;
}

template <typename Scalar>
bool mat_eq(const MatrixOf<Scalar>& a, const MatrixOf<Scalar>& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (!(a(i, j) == b(i, j))) return false;
    return true;
}

}  // namespace charweb
