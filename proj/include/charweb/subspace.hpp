#pragma once

#include <optional>
#include <vector>

#include "charweb/linalg.hpp"

namespace charweb {

/// Linear subspace of C^n, stored as a reduced-row-echelon basis with zero
/// rows removed. Two spanning sets of the same subspace always produce the
/// identical basis matrix, so equality is plain data equality.
class Subspace {
public:
    Subspace() : n_(0), basis_(0, 0) {}

    static Subspace zero(Index n);
    static Subspace full(Index n);
    /// Canonical row space of `spanning`, which must have n columns.
    static Subspace from_spanning(Index n, const Mat& spanning);

    Index ambient_dim() const { return n_; }
    Index dim() const { return basis_.rows(); }
    const Mat& basis() const { return basis_; }
    const std::vector<Index>& pivot_cols() const { return pivots_; }

    bool is_zero() const { return dim() == 0; }
    bool is_full() const { return dim() == n_; }

    /// Coordinates of `v` in the basis rows, or nullopt if v is outside.
    std::optional<RowVec> coords_of(const RowVec& v) const;
    bool contains(const RowVec& v) const { return coords_of(v).has_value(); }
    bool contains(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.n_ == b.n_ && mat_eq(a.basis_, b.basis_);
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

private:
    Index n_;
    Mat basis_;
    std::vector<Index> pivots_;
};

/// Smallest subspace containing both arguments.
Subspace sum(const Subspace& a, const Subspace& b);

/// Largest subspace contained in both arguments (Zassenhaus block scheme).
Subspace intersect(const Subspace& a, const Subspace& b);

/// Same result as intersect(), computed from stacked kernel constraints.
/// Kept as an independent second route; the two are cross-checked in tests.
Subspace intersect_via_kernels(const Subspace& a, const Subspace& b);

/// dim(a + b) without materializing the sum's canonical basis.
Index dim_of_sum(const Subspace& a, const Subspace& b);

}  // namespace charweb
