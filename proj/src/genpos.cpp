#include "charweb/genpos.hpp"

#include <algorithm>

#include "charweb/errors.hpp"

namespace charweb {

bool pair_in_general_position(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw SemanticError("general position: ambient dimension mismatch");
    const Index n = a.ambient_dim();
    return dim_of_sum(a, b) == std::min(n, a.dim() + b.dim());
}

int GenPosChecker::intern_leaf(int var) {
    return leaf_ids_[static_cast<std::size_t>(var - 1)];
}

int GenPosChecker::intern_fold(ExprOp op, int a, int b) {
    if (a > b && op != ExprOp::Var) std::swap(a, b);  // folds are commutative
    auto key = std::make_tuple(static_cast<int>(op), a, b);
    auto it = fold_ids_.find(key);
    if (it != fold_ids_.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{op, a, b});
    fold_ids_.emplace(key, id);
    return id;
}

int GenPosChecker::intern_expr(const Expr& e) {
    if (e.is_var()) return intern_leaf(e.var_index());
    int acc = intern_expr(e.children().front());
    for (std::size_t i = 1; i < e.children().size(); ++i)
        acc = intern_fold(e.op(), acc, intern_expr(e.children()[i]));
    return acc;
}

void GenPosChecker::unfold(int id, ExprOp op, std::vector<Expr>& out) const {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.op == op && n.op != ExprOp::Var) {
        unfold(n.a, op, out);
        unfold(n.b, op, out);
    } else {
        out.push_back(node_to_expr(id));
    }
}

Expr GenPosChecker::node_to_expr(int id) const {
    const Node& n = nodes_[static_cast<std::size_t>(id)];
    if (n.op == ExprOp::Var) return Expr::var(n.a);
    std::vector<Expr> children;
    unfold(n.a, n.op, children);
    unfold(n.b, n.op, children);
    return Expr::node(n.op, std::move(children));
}

GenPosChecker::GenPosChecker(int s, int budget) : s_(s) {
    if (s < 1) throw SemanticError("general position: empty system");
    if (s > budget)
        throw ResourceError("general position: system size " + std::to_string(s) +
                            " exceeds the enumeration budget " + std::to_string(budget) +
                            "; pass an explicit larger budget to insist");
    for (int v = 1; v <= s; ++v) {
        leaf_ids_.push_back(static_cast<int>(nodes_.size()));
        nodes_.push_back(Node{ExprOp::Var, v, -1});
    }
    const std::size_t full = std::size_t{1} << s;
    roots_by_mask_.resize(full);
    pure_roots_by_mask_.resize(full);
    // Expression sides of an independent pair use at most s-1 variables.
    for (std::size_t mask = 1; mask < full; ++mask) {
        const int size = __builtin_popcountll(mask);
        if (size > s - 1) continue;
        std::set<int> vars;
        for (int v = 0; v < s; ++v)
            if (mask >> v & 1u) vars.insert(v + 1);
        if (size == 1) {
            int leaf = intern_leaf(*vars.begin());
            roots_by_mask_[mask] = {leaf};
            pure_roots_by_mask_[mask] = {leaf};
            continue;
        }
        for (const Expr& e : enumerate_multilinear(vars, s))
            roots_by_mask_[mask].push_back(intern_expr(e));
        std::vector<Expr> atoms;
        for (int v : vars) atoms.push_back(Expr::var(v));
        pure_roots_by_mask_[mask].push_back(intern_expr(Expr::sum(atoms)));
        pure_roots_by_mask_[mask].push_back(intern_expr(Expr::meet(atoms)));
    }
}

std::vector<Subspace> GenPosChecker::evaluate_all(const SubspaceSystem& system) const {
    std::vector<Subspace> values(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (n.op == ExprOp::Var) {
            values[i] = system.member(n.a - 1);
        } else if (n.op == ExprOp::Sum) {
            values[i] = sum(values[static_cast<std::size_t>(n.a)],
                            values[static_cast<std::size_t>(n.b)]);
        } else {
            values[i] = intersect(values[static_cast<std::size_t>(n.a)],
                                  values[static_cast<std::size_t>(n.b)]);
        }
    }
    return values;
}

GenPosVerdict GenPosChecker::sweep(const SubspaceSystem& system,
                                   const std::vector<std::vector<int>>& roots_by_mask) const {
    if (system.size() != s_)
        throw SemanticError("general position: checker built for s=" + std::to_string(s_));
    const Index n = system.ambient_dim();
    std::vector<Subspace> values = evaluate_all(system);

    const std::size_t full = std::size_t{1} << s_;
    for (std::size_t a = 1; a < full; ++a) {
        if (roots_by_mask[a].empty()) continue;
        const std::size_t rest = (full - 1) & ~a;
        // Ascending enumeration of nonempty subsets of `rest`; the unordered
        // pair {A,B} is visited once, when A holds the lowest variable.
        std::vector<std::size_t> bs;
        for (std::size_t b = rest; b; b = (b - 1) & rest) bs.push_back(b);
        std::sort(bs.begin(), bs.end());
        for (std::size_t b : bs) {
            if ((a | b) & -(a | b) & b) continue;  // lowest bit must lie in A
            if (roots_by_mask[b].empty()) continue;
            for (int pid : roots_by_mask[a]) {
                const Subspace& pv = values[static_cast<std::size_t>(pid)];
                if (pv.dim() == 0) continue;  // zero side is trivially fine
                for (int qid : roots_by_mask[b]) {
                    const Subspace& qv = values[static_cast<std::size_t>(qid)];
                    if (qv.dim() == 0) continue;
                    const Index expected = std::min(n, pv.dim() + qv.dim());
                    if (pv.dim() == n || qv.dim() == n) continue;  // sum is full
                    const Index observed = dim_of_sum(pv, qv);
                    if (observed != expected) {
                        GenPosWitness w{node_to_expr(pid), node_to_expr(qid),
                                        pv.dim(), qv.dim(), observed, expected};
                        return GenPosVerdict{false, std::move(w)};
                    }
                }
            }
        }
    }
    return GenPosVerdict{true, std::nullopt};
}

GenPosVerdict GenPosChecker::check(const SubspaceSystem& system) const {
    return sweep(system, roots_by_mask_);
}

GenPosVerdict GenPosChecker::check_pure_pairs(const SubspaceSystem& system) const {
    return sweep(system, pure_roots_by_mask_);
}

GenPosVerdict system_in_general_position(const SubspaceSystem& system, int budget) {
    return GenPosChecker(static_cast<int>(system.size()), budget).check(system);
}

GenPosVerdict pairwise_atoms_in_general_position(const SubspaceSystem& system) {
    const Index n = system.ambient_dim();
    for (Index i = 0; i < system.size(); ++i) {
        for (Index j = i + 1; j < system.size(); ++j) {
            const Subspace& a = system.member(i);
            const Subspace& b = system.member(j);
            const Index expected = std::min(n, a.dim() + b.dim());
            const Index observed = dim_of_sum(a, b);
            if (observed != expected) {
                GenPosWitness w{Expr::var(static_cast<int>(i) + 1),
                                Expr::var(static_cast<int>(j) + 1),
                                a.dim(), b.dim(), observed, expected};
                return GenPosVerdict{false, std::move(w)};
            }
        }
    }
    return GenPosVerdict{true, std::nullopt};
}

bool system_in_general_position_at_dims_generic(Index n, const std::vector<Index>& dims,
                                                int trials, std::uint64_t seed, int budget) {
    if (trials < 1) throw SemanticError("general position: trials must be >= 1");
    GenPosChecker checker(static_cast<int>(dims.size()), budget);
    Rng root = Rng(seed).derive("genpos-at-dims");
    for (int t = 0; t < trials; ++t) {
        Rng trial = root.derive(static_cast<std::uint64_t>(t));
        SubspaceSystem e = random_system(n, dims, trial);
        if (checker.check(e).in_general_position) return true;
    }
    return false;
}

}  // namespace charweb
