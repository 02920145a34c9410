#include "charweb/linear_map.hpp"

namespace charweb {

LinearMap::LinearMap(Subspace domain, Subspace codomain, Mat action)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), action_(std::move(action)) {
    if (domain_.ambient_dim() != codomain_.ambient_dim())
        throw SemanticError("linear map: domain and codomain live in different ambient spaces");
    if (action_.rows() != domain_.dim() || action_.cols() != codomain_.dim())
        throw SemanticError("linear map: action shape " + std::to_string(action_.rows()) + "x" +
                            std::to_string(action_.cols()) + " does not match dims " +
                            std::to_string(domain_.dim()) + "x" + std::to_string(codomain_.dim()));
}

LinearMap LinearMap::identity_on(const Subspace& s) {
    return LinearMap(s, s, Mat::Identity(s.dim(), s.dim()));
}

LinearMap LinearMap::zero_map(const Subspace& domain, const Subspace& codomain) {
    return LinearMap(domain, codomain, Mat::Zero(domain.dim(), codomain.dim()));
}

LinearMap LinearMap::on_ambient(Index n, Mat m) {
    if (m.rows() != n || m.cols() != n)
        throw SemanticError("linear map: ambient matrix must be n x n");
    // The standard basis is the canonical basis of the full subspace, so the
    // matrix is the action verbatim; the codomain stays all of C^n.
    return LinearMap(Subspace::full(n), Subspace::full(n), std::move(m));
}

RowVec LinearMap::apply(const RowVec& v) const {
    auto x = domain_.coords_of(v);
    if (!x) throw SemanticError("linear map: vector outside the domain");
    return RowVec(RowVec(*x * action_) * codomain_.basis());
}

Subspace LinearMap::image() const {
    return Subspace::from_spanning(codomain_.ambient_dim(), Mat(action_ * codomain_.basis()));
}

LinearMap LinearMap::then(const LinearMap& next) const {
    const Index d = domain_.dim();
    Mat combined(d, next.codomain_.dim());
    for (Index i = 0; i < d; ++i) {
        RowVec mid(RowVec(action_.row(i)) * codomain_.basis());
        auto x = next.domain_.coords_of(mid);
        if (!x) throw SemanticError("linear map: composition image escapes the next domain");
        combined.row(i) = RowVec(*x * next.action_);
    }
    return LinearMap(domain_, next.codomain_, std::move(combined));
}

LinearMap LinearMap::restricted_to(const Subspace& sub) const {
    if (!domain_.contains(sub))
        throw SemanticError("linear map: restriction target is not contained in the domain");
    Mat rows(sub.dim(), codomain_.dim());
    for (Index i = 0; i < sub.dim(); ++i) {
        auto x = domain_.coords_of(RowVec(sub.basis().row(i)));
        rows.row(i) = RowVec(*x * action_);
    }
    return LinearMap(sub, codomain_, std::move(rows));
}

LinearMap LinearMap::inverse_on_image() const {
    if (!is_injective()) throw SemanticError("linear map: not injective, no inverse on image");
    Subspace img = image();
    Mat rows(img.dim(), domain_.dim());
    for (Index i = 0; i < img.dim(); ++i) {
        auto c = codomain_.coords_of(RowVec(img.basis().row(i)));
        auto x = solve_left<GQ>(action_, Mat(*c));
        if (!x) throw InternalError("inverse_on_image: image vector with no preimage");
        rows.row(i) = x->row(0);
    }
    return LinearMap(img, domain_, std::move(rows));
}

Mat LinearMap::ambient_matrix() const {
    const Index n = domain_.ambient_dim();
    if (!domain_.is_full())
        throw SemanticError("linear map: ambient matrix requires a full-space domain");
    Mat m(n, n);
    for (Index i = 0; i < n; ++i) m.row(i) = apply(RowVec(RowVec::Unit(n, i)));
    return m;
}

LinearMap LinearMap::scaled(const GQ& factor) const {
    Mat m = action_;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) * factor;
    return LinearMap(domain_, codomain_, std::move(m));
}

LinearMap LinearMap::plus(const LinearMap& other) const {
    if (!(domain_ == other.domain_) || !(codomain_ == other.codomain_))
        throw SemanticError("linear map: sum requires identical domain and codomain");
    return LinearMap(domain_, codomain_, Mat(action_ + other.action_));
}

LinearMap direct_sum_projection(const std::vector<Subspace>& parts, Index k) {
    if (parts.empty()) throw SemanticError("projection: no parts");
    if (k < 0 || k >= static_cast<Index>(parts.size()))
        throw SemanticError("projection: part index out of range");
    const Index n = parts.front().ambient_dim();
    Index total = 0;
    for (const Subspace& p : parts) {
        if (p.ambient_dim() != n) throw SemanticError("projection: mixed ambient dimensions");
        total += p.dim();
    }
    if (total != n)
        throw SemanticError("projection: part dimensions sum to " + std::to_string(total) +
                            ", expected " + std::to_string(n));
    Mat stacked(n, n);
    Index offset = 0, k_offset = 0;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        const Mat& b = parts[j].basis();
        stacked.middleRows(offset, b.rows()) = b;
        if (static_cast<Index>(j) == k) k_offset = offset;
        offset += b.rows();
    }
    if (rank_of<GQ>(stacked) != n)
        throw SemanticError("projection: parts do not form a direct sum of the full space");
    Mat inv = invert<GQ>(stacked);
    // Row coordinates in the stacked basis are v * inv; the k-block columns
    // are exactly the coordinates in parts[k].
    Mat action = inv.middleCols(k_offset, parts[static_cast<std::size_t>(k)].dim());
    return LinearMap(Subspace::full(n), parts[static_cast<std::size_t>(k)], std::move(action));
}

}  // namespace charweb
