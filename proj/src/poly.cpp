#include "charweb/poly.hpp"

#include <algorithm>

#include "charweb/errors.hpp"

namespace charweb {

Poly Poly::constant(Index n_in, GQ value) {
    Poly p(n_in);
    p.add_term(std::move(value), std::vector<int>(static_cast<std::size_t>(n_in), 0));
    return p;
}

Poly Poly::variable(Index n_in, Index j) {
    if (j < 0 || j >= n_in) throw SemanticError("poly: variable index out of range");
    Poly p(n_in);
    std::vector<int> exps(static_cast<std::size_t>(n_in), 0);
    exps[static_cast<std::size_t>(j)] = 1;
    p.add_term(GQ(1), std::move(exps));
    return p;
}

void Poly::add_term(GQ coeff, std::vector<int> exps) {
    if (static_cast<Index>(exps.size()) != n_in_)
        throw SemanticError("poly: exponent vector length " + std::to_string(exps.size()) +
                            " does not match variable count " + std::to_string(n_in_));
    for (int e : exps)
        if (e < 0) throw SemanticError("poly: negative exponent");
    terms_.push_back(Term{std::move(coeff), std::move(exps)});
    normalize();
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.exps < b.exps; });
    std::vector<Term> merged;
    for (Term& t : terms_) {
        if (!merged.empty() && merged.back().exps == t.exps) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.coeff.is_zero(); }),
                 merged.end());
    terms_ = std::move(merged);
}

GQ Poly::eval(const RowVec& point) const {
    if (point.cols() != n_in_) throw SemanticError("poly: evaluation point has the wrong length");
    GQ total(0);
    for (const Term& t : terms_) {
        GQ value = t.coeff;
        for (Index j = 0; j < n_in_; ++j) {
            for (int e = 0; e < t.exps[static_cast<std::size_t>(j)]; ++e) value *= point(j);
        }
        total += value;
    }
    return total;
}

Poly Poly::derivative(Index j) const {
    if (j < 0 || j >= n_in_) throw SemanticError("poly: derivative index out of range");
    Poly out(n_in_);
    for (const Term& t : terms_) {
        const int e = t.exps[static_cast<std::size_t>(j)];
        if (e == 0) continue;
        Term d = t;
        d.coeff *= GQ(e);
        --d.exps[static_cast<std::size_t>(j)];
        out.terms_.push_back(std::move(d));
    }
    out.normalize();
    return out;
}

Poly operator+(const Poly& a, const Poly& b) {
    if (a.n_in_ != b.n_in_) throw SemanticError("poly: variable count mismatch");
    Poly out(a.n_in_);
    out.terms_ = a.terms_;
    for (const Term& t : b.terms_) out.terms_.push_back(t);
    out.normalize();
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.n_in_ != b.n_in_) throw SemanticError("poly: variable count mismatch");
    Poly out(a.n_in_);
    for (const Term& s : a.terms_) {
        for (const Term& t : b.terms_) {
            Term p;
            p.coeff = s.coeff * t.coeff;
            p.exps.resize(static_cast<std::size_t>(a.n_in_));
            for (std::size_t j = 0; j < p.exps.size(); ++j) p.exps[j] = s.exps[j] + t.exps[j];
            out.terms_.push_back(std::move(p));
        }
    }
    out.normalize();
    return out;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.n_in_ != b.n_in_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].exps != b.terms_[i].exps) return false;
        if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
}

PolyMap::PolyMap(Index n_in, std::vector<Poly> components)
    : n_in_(n_in), components_(std::move(components)) {
    if (components_.empty()) throw SemanticError("poly map: no components");
    for (const Poly& p : components_)
        if (p.n_in() != n_in_)
            throw SemanticError("poly map: component variable count mismatch");
}

RowVec PolyMap::eval(const RowVec& z) const {
    RowVec out(n_out());
    for (Index i = 0; i < n_out(); ++i) out(i) = components_[static_cast<std::size_t>(i)].eval(z);
    return out;
}

std::vector<std::vector<Poly>> PolyMap::jacobian() const {
    std::vector<std::vector<Poly>> rows;
    rows.reserve(static_cast<std::size_t>(n_out()));
    for (const Poly& p : components_) {
        std::vector<Poly> row;
        row.reserve(static_cast<std::size_t>(n_in_));
        for (Index j = 0; j < n_in_; ++j) row.push_back(p.derivative(j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Mat PolyMap::jacobian_at(const RowVec& z) const {
    Mat m(n_out(), n_in_);
    for (Index i = 0; i < n_out(); ++i)
        for (Index j = 0; j < n_in_; ++j)
            m(i, j) = components_[static_cast<std::size_t>(i)].derivative(j).eval(z);
    return m;
}

void PolyhedralPresentation::validate() const {
    if (defs.empty()) throw SemanticError("presentation: needs at least one defining map");
    for (const PolyMap& g : defs)
        if (g.n_in() != n)
            throw SemanticError("presentation: defining map lives on C^" +
                                std::to_string(g.n_in()) + ", expected C^" + std::to_string(n));
}

}  // namespace charweb
