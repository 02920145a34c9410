#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "charweb/genpos.hpp"

namespace charweb {

/// Witness data for n-rigidity of a dimension tuple at one target index:
/// expression systems P (length K >= 2), Q (length L >= 1) and index sets
/// I_1..I_{K-1} into Q. On every general-position system E of the given
/// dimensions the conditions are
///   1. E_target lies in P~_1(E), the sum of P_2(E)..P_K(E);
///   2. C^n is the direct sum of the P_k(E);
///   3. for each k < K: P~_k(E) + sum of the selected Q_l(E) and
///      P~_{k+1}(E) + the same sum are all of C^n, while each selected
///      Q_l(E) meets both P~_k(E) and P~_{k+1}(E) in zero.
struct Certificate {
    Index n = 0;
    std::vector<Index> dims;
    int target = 1;                        // 1-based index i
    std::vector<Expr> p_exprs;             // length K
    std::vector<Expr> q_exprs;             // length L
    std::vector<std::vector<int>> i_sets;  // K-1 sets of 1-based Q indices

    Index k_count() const { return static_cast<Index>(p_exprs.size()); }
    Index l_count() const { return static_cast<Index>(q_exprs.size()); }

    /// Structural invariants: K >= 2, L >= 1, nonempty I_k, indices in
    /// range, expression variables within 1..s. Throws SemanticError.
    void validate() const;
};

enum class RigidityFailure { Cond1, Cond2, Cond3Sum, Cond3Meet, NotGeneralPosition };

std::string to_string(RigidityFailure f);

struct RigidityVerdict {
    bool holds = false;
    std::optional<RigidityFailure> failed_condition;
    std::string detail;  // observed dimensions for the failing check
};

struct GenericVerdict {
    RigidityVerdict verdict;  // first failure, or a holding verdict
    int trials = 0;
    int passed = 0;
    int skipped = 0;  // draws that failed the general-position precheck
};

/// Sum of the evaluations of all p[j], j != k (k is 0-based here).
Subspace p_tilde(const std::vector<Expr>& p, Index k, const SubspaceSystem& system);

/// Checks the three certificate conditions on one instance. The instance is
/// required to be in general position first: within `genpos_budget` that is
/// the full decision procedure, beyond it only the pairwise-atom sieve is
/// applied (the full check is super-exponential in s). A failed precheck
/// yields NotGeneralPosition, not a rigidity verdict.
RigidityVerdict verify_certificate(const Certificate& cert, const SubspaceSystem& system,
                                   int genpos_budget = kDefaultGenPosBudget);

/// Same, with a caller-owned checker reused across instances (must match s),
/// or nullptr for the pairwise sieve.
RigidityVerdict verify_certificate_with(const Certificate& cert, const SubspaceSystem& system,
                                        const GenPosChecker* checker);

/// Verifies on `trials` seeded random systems of the certificate's
/// dimensions, skipping draws that fail the general-position precheck.
/// Holds iff every non-skipped trial holds. All draws degenerate is an
/// InternalError (entry range too small for the dimensions).
GenericVerdict verify_certificate_generic(const Certificate& cert, int trials,
                                          std::uint64_t seed,
                                          int genpos_budget = kDefaultGenPosBudget,
                                          long entry_range = kDefaultEntryRange);

/// Certificate family for tuples (1,...,1) with s > n: P_1 is a spare line,
/// P_2..P_n are atoms over n-1 lines including the target, Q_1 is one more
/// line, every I_k = {1}. The target sits among P_2..P_K so that condition 1
/// holds; placing it as P_1 would put E_target outside P~_1 generically.
Certificate cert_lines(Index n, Index s, int target);

/// Certificate family for tuples (n-1,...,n-1) with s > n: P_k are the
/// "dual basis" lines (intersections of all but one of n chosen hyperplanes,
/// the target's omission listed first), Q_l = (P_l + P_{l+1}) & X_f for a
/// fresh hyperplane f, I_k = {k}.
Certificate cert_hyperplanes(Index n, Index s, int target);

/// s(n) = n(n-1)/2 + 1: block size used by the splitting construction.
Index splitting_count(Index n);

/// N(n) = (n+1) * s(n): with at least this many subspaces every dimension
/// tuple admits a constructed certificate.
Index n_bound(Index n);

/// Two admissible expressions over disjoint variable subsets of E whose
/// evaluations give a nontrivial direct sum C^n = W + Z. Greedy maximal
/// direct sum for Z (members by decreasing dimension, ties by index; a
/// preferred member, when given, is taken first and ends up inside Z);
/// when Z falls short of C^n the construction recurses on the nonzero
/// intersections E_j & Z inside Z and returns the meet of the two lifted
/// sub-expressions as W. The direct-sum postcondition is machine-checked.
std::pair<Expr, Expr> find_splitting(const SubspaceSystem& system,
                                     std::optional<int> prefer = std::nullopt,
                                     int genpos_budget = kDefaultGenPosBudget);

struct BuildOptions {
    std::uint64_t seed = 0;
    int trials = 100;
    int genpos_budget = kDefaultGenPosBudget;
    long entry_range = kDefaultEntryRange;
    int attempts = 8;
};

/// Constructive certificate for arbitrary dimension tuples with
/// s >= N(n): partitions the variables into n+1 blocks of size s(n), builds
/// one splitting per block on a random generic instance, takes the target
/// block's splitting as (P_1, P_2) with the target inside P_2, and selects
/// enough other-block parts as Q to satisfy condition 3. The result is
/// always passed through generic verification before being returned;
/// a candidate that fails is a DegeneracyError, not a certificate.
Certificate build_certificate(Index n, const std::vector<Index>& dims, int target,
                              const BuildOptions& options = {});

struct SearchOptions {
    std::uint64_t seed = 0;
    int trials = 25;
    int max_k = 3;          // parts in P
    int max_l = 2;          // expressions in Q
    int genpos_budget = kDefaultGenPosBudget;
    long entry_range = kDefaultEntryRange;
};

/// Exhaustive certificate search over canonical multilinear expressions for
/// small instances (s <= 5). Candidates are screened on one generic probe
/// instance (conditions are Zariski open/closed, so a generic failure
/// refutes a candidate) and survivors must pass generic verification.
/// Returns the first verified certificate in scan order, or nullopt when
/// the bounded space is exhausted.
std::optional<Certificate> search_certificate(Index n, const std::vector<Index>& dims,
                                              int target, const SearchOptions& options = {});

}  // namespace charweb
