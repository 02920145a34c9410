#pragma once

#include <vector>

#include "charweb/linalg.hpp"

namespace charweb {

/// One monomial: coeff * prod_j z_j^exps[j]. exps has length n_in.
struct Term {
    GQ coeff;
    std::vector<int> exps;
};

/// Multivariate polynomial over Q(i) as a normalized term list: exponent
/// vectors are unique and sorted, zero coefficients dropped. Evaluation at
/// rational points is exact.
class Poly {
public:
    explicit Poly(Index n_in) : n_in_(n_in) {}
    static Poly constant(Index n_in, GQ value);
    static Poly variable(Index n_in, Index j);

    Index n_in() const { return n_in_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(GQ coeff, std::vector<int> exps);

    GQ eval(const RowVec& point) const;
    Poly derivative(Index j) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

private:
    void normalize();

    Index n_in_;
    std::vector<Term> terms_;
};

/// Polynomial map C^{n_in} -> C^{n_out}, one Poly per output component.
class PolyMap {
public:
    PolyMap(Index n_in, std::vector<Poly> components);

    Index n_in() const { return n_in_; }
    Index n_out() const { return static_cast<Index>(components_.size()); }
    const std::vector<Poly>& components() const { return components_; }

    RowVec eval(const RowVec& z) const;

    /// Exact symbolic partial derivatives, as an n_out x n_in grid.
    std::vector<std::vector<Poly>> jacobian() const;
    /// The Jacobian evaluated at z, as an n_out x n_in matrix.
    Mat jacobian_at(const RowVec& z) const;

private:
    Index n_in_;
    std::vector<Poly> components_;
};

/// Defining data of a domain of polyhedral type: polynomial maps g_1..g_s on
/// a common C^n. Minimality of the set is not assumed.
struct PolyhedralPresentation {
    Index n = 0;
    std::vector<PolyMap> defs;

    Index size() const { return static_cast<Index>(defs.size()); }
    void validate() const;
};

}  // namespace charweb
