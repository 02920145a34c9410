#pragma once

#include <cstdint>
#include <optional>
#include <tuple>

#include "charweb/expr.hpp"

namespace charweb {

struct GenPosWitness {
    Expr p;
    Expr q;
    Index dim_p = 0;
    Index dim_q = 0;
    Index dim_sum = 0;       // observed dim(P(E) + Q(E))
    Index dim_expected = 0;  // min(n, dim P(E) + dim Q(E))
};

struct GenPosVerdict {
    bool in_general_position = false;
    std::optional<GenPosWitness> witness;  // present iff the verdict is negative
};

/// dim(A + B) == min(n, dim A + dim B).
bool pair_in_general_position(const Subspace& a, const Subspace& b);

inline constexpr int kDefaultGenPosBudget = 8;

/// Full general-position decision for systems of a fixed size s: every
/// independent pair of admissible expressions evaluates to a pair in general
/// position. Since independence rules out repeated variables, it suffices to
/// sweep multilinear expression pairs over disjoint nonempty variable
/// subsets, up to associativity/commutativity.
///
/// Evaluations are shared through an interned binary-fold DAG, so the
/// checker is built once per s and reused across instances.
class GenPosChecker {
public:
    explicit GenPosChecker(int s, int budget = kDefaultGenPosBudget);

    int system_size() const { return s_; }

    /// Deterministic: scans subset splits in ascending mask order and
    /// expressions in canonical order, returning the first violation.
    GenPosVerdict check(const SubspaceSystem& system) const;

    /// Restricted sweep where both sides are pure sums or pure
    /// intersections of atoms. Weaker than check(); the gap between the two
    /// is exactly what concurrent-plane configurations exploit.
    GenPosVerdict check_pure_pairs(const SubspaceSystem& system) const;

private:
    struct Node {
        ExprOp op;  // Var: leaf, else binary fold of a canonical n-ary node
        int a = 0;  // Var: 1-based variable index; else left node id
        int b = -1; // right node id
    };

    int intern_leaf(int var);
    int intern_fold(ExprOp op, int a, int b);
    int intern_expr(const Expr& e);
    Expr node_to_expr(int id) const;
    void unfold(int id, ExprOp op, std::vector<Expr>& out) const;

    std::vector<Subspace> evaluate_all(const SubspaceSystem& system) const;
    GenPosVerdict sweep(const SubspaceSystem& system,
                        const std::vector<std::vector<int>>& roots_by_mask) const;

    int s_;
    std::vector<Node> nodes_;
    std::vector<std::vector<int>> roots_by_mask_;       // all multilinear expressions
    std::vector<std::vector<int>> pure_roots_by_mask_;  // flat sum / flat meet / atom
    std::map<std::tuple<int, int, int>, int> fold_ids_;
    std::vector<int> leaf_ids_;
};

/// One-shot convenience wrapper around GenPosChecker.
GenPosVerdict system_in_general_position(const SubspaceSystem& system,
                                         int budget = kDefaultGenPosBudget);

/// Necessary condition only: all member pairs are in general position.
/// This is the sieve applied to systems larger than the enumeration budget.
GenPosVerdict pairwise_atoms_in_general_position(const SubspaceSystem& system);

/// True iff some seeded random system with the given dimensions passes the
/// full check; confirms a dimension tuple is realizable in general position.
bool system_in_general_position_at_dims_generic(Index n, const std::vector<Index>& dims,
                                                int trials, std::uint64_t seed,
                                                int budget = kDefaultGenPosBudget);

}  // namespace charweb
