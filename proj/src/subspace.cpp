#include "charweb/subspace.hpp"

namespace charweb {

Subspace Subspace::zero(Index n) {
    Subspace s;
    s.n_ = n;
    s.basis_ = Mat(0, n);
    return s;
}

Subspace Subspace::full(Index n) {
    Subspace s;
    s.n_ = n;
    s.basis_ = Mat::Identity(n, n);
    s.pivots_.resize(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) s.pivots_[static_cast<std::size_t>(i)] = i;
    return s;
}

Subspace Subspace::from_spanning(Index n, const Mat& spanning) {
    if (spanning.cols() != n)
        throw SemanticError("subspace: spanning rows have " + std::to_string(spanning.cols()) +
                            " columns, ambient dimension is " + std::to_string(n));
    Mat m = spanning;
    std::vector<Index> pivots;
    Index rank = rref_in_place(m, &pivots);
    Subspace s;
    s.n_ = n;
    s.basis_ = m.topRows(rank);
    s.pivots_ = std::move(pivots);
    return s;
}

std::optional<RowVec> Subspace::coords_of(const RowVec& v) const {
    if (v.cols() != n_) throw SemanticError("subspace: vector length does not match ambient dimension");
    const Index d = dim();
    RowVec x(d);
    for (Index j = 0; j < d; ++j) x(j) = v(pivots_[static_cast<std::size_t>(j)]);
    // Pivot coordinates determine the only candidate; verify the rest.
    RowVec rec = d > 0 ? RowVec(x * basis_) : RowVec(RowVec::Zero(n_));
    for (Index c = 0; c < n_; ++c)
        if (!(rec(c) == v(c))) return std::nullopt;
    return x;
}

bool Subspace::contains(const Subspace& other) const {
    if (other.n_ != n_) throw SemanticError("subspace: ambient dimension mismatch");
    for (Index i = 0; i < other.dim(); ++i)
        if (!contains(RowVec(other.basis_.row(i)))) return false;
    return true;
}

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw SemanticError("subspace: ambient dimension mismatch (" +
                            std::to_string(a.ambient_dim()) + " vs " +
                            std::to_string(b.ambient_dim()) + ")");
}

}  // namespace

Subspace sum(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Mat stacked(a.dim() + b.dim(), a.ambient_dim());
    stacked.topRows(a.dim()) = a.basis();
    stacked.bottomRows(b.dim()) = b.basis();
    return Subspace::from_spanning(a.ambient_dim(), stacked);
}

Index dim_of_sum(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    if (a.is_zero()) return b.dim();
    if (b.is_zero()) return a.dim();
    Mat stacked(a.dim() + b.dim(), a.ambient_dim());
    stacked.topRows(a.dim()) = a.basis();
    stacked.bottomRows(b.dim()) = b.basis();
    return rank_destructive(stacked);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    const Index n = a.ambient_dim();
    if (a.is_zero() || b.is_zero()) return Subspace::zero(n);
    if (a.is_full()) return b;
    if (b.is_full()) return a;
    // Zassenhaus: rref of [A A; B 0]; rows with zero left half carry the
    // intersection in their right half.
    const Index da = a.dim(), db = b.dim();
    Mat block = Mat::Zero(da + db, 2 * n);
    block.block(0, 0, da, n) = a.basis();
    block.block(0, n, da, n) = a.basis();
    block.block(da, 0, db, n) = b.basis();
    std::vector<Index> pivots;
    Index rank = rref_in_place(block, &pivots);
    Index first = -1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] >= n) {
            first = static_cast<Index>(i);
            break;
        }
    }
    if (first < 0) return Subspace::zero(n);
    return Subspace::from_spanning(n, block.block(first, n, rank - first, n));
}

Subspace intersect_via_kernels(const Subspace& a, const Subspace& b) {
    require_same_ambient(a, b);
    const Index n = a.ambient_dim();
    Mat za = right_kernel<GQ>(a.basis());
    Mat zb = right_kernel<GQ>(b.basis());
    Mat constraints(n, za.cols() + zb.cols());
    constraints.leftCols(za.cols()) = za;
    constraints.rightCols(zb.cols()) = zb;
    // v is in both row spaces iff v * constraints = 0.
    Mat k = right_kernel<GQ>(Mat(constraints.transpose()));
    return Subspace::from_spanning(n, Mat(k.transpose()));
}

}  // namespace charweb
