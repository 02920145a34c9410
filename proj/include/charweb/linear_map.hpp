#pragma once

#include <vector>

#include "charweb/subspace.hpp"

namespace charweb {

/// Linear map between two stored subspaces. Row-vector convention
/// throughout: vectors are rows, maps act on the right, so `action` is
/// (dim domain) x (dim codomain) and sends domain coordinates x to codomain
/// coordinates x * action.
class LinearMap {
public:
    LinearMap(Subspace domain, Subspace codomain, Mat action);

    static LinearMap identity_on(const Subspace& s);
    static LinearMap zero_map(const Subspace& domain, const Subspace& codomain);
    /// v -> v * m on all of C^n.
    static LinearMap on_ambient(Index n, Mat m);

    const Subspace& domain() const { return domain_; }
    const Subspace& codomain() const { return codomain_; }
    const Mat& action() const { return action_; }

    /// Apply to an ambient row vector, which must lie in the domain.
    RowVec apply(const RowVec& v) const;

    Subspace image() const;
    bool is_injective() const { return rank_of<GQ>(action_) == domain_.dim(); }

    /// Composition: first this, then `next`. The image must lie in
    /// next.domain().
    LinearMap then(const LinearMap& next) const;

    /// Same action on a smaller domain; `sub` must be contained in domain().
    LinearMap restricted_to(const Subspace& sub) const;

    /// Inverse of an injective map, defined on its image.
    LinearMap inverse_on_image() const;

    /// For maps defined on all of C^n: the n x n matrix acting by v -> v*M.
    Mat ambient_matrix() const;

    LinearMap scaled(const GQ& factor) const;
    LinearMap plus(const LinearMap& other) const;

    friend bool operator==(const LinearMap& a, const LinearMap& b) {
        return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ &&
               mat_eq(a.action_, b.action_);
    }
    friend bool operator!=(const LinearMap& a, const LinearMap& b) { return !(a == b); }

private:
    Subspace domain_;
    Subspace codomain_;
    Mat action_;
};

/// Projection of C^n = parts[0] + ... + parts[K-1] (checked to be a direct
/// sum of the full space) onto parts[k] along the sum of the others.
LinearMap direct_sum_projection(const std::vector<Subspace>& parts, Index k);

}  // namespace charweb
