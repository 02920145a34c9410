#include "charweb/rigidity.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "charweb/errors.hpp"

namespace charweb {

std::string to_string(RigidityFailure f) {
    switch (f) {
        case RigidityFailure::Cond1: return "cond1";
        case RigidityFailure::Cond2: return "cond2";
        case RigidityFailure::Cond3Sum: return "cond3-sum";
        case RigidityFailure::Cond3Meet: return "cond3-meet";
        case RigidityFailure::NotGeneralPosition: return "not-general-position";
    }
    return "?";
}

void Certificate::validate() const {
    const Index s = static_cast<Index>(dims.size());
    if (n < 1) throw SemanticError("certificate: ambient dimension must be positive");
    if (s < 1) throw SemanticError("certificate: empty dimension tuple");
    if (target < 1 || target > s) throw SemanticError("certificate: target index out of range");
    if (p_exprs.size() < 2) throw SemanticError("certificate: needs at least two P expressions");
    if (q_exprs.empty()) throw SemanticError("certificate: needs at least one Q expression");
    if (i_sets.size() != p_exprs.size() - 1)
        throw SemanticError("certificate: expected " + std::to_string(p_exprs.size() - 1) +
                            " index sets, got " + std::to_string(i_sets.size()));
    for (const auto& set : i_sets) {
        if (set.empty()) throw SemanticError("certificate: empty index set");
        for (int l : set)
            if (l < 1 || l > static_cast<int>(q_exprs.size()))
                throw SemanticError("certificate: index set entry out of range");
    }
    auto check_vars = [s](const Expr& e) {
        if (e.max_var() > s)
            throw SemanticError("certificate: expression variable X" +
                                std::to_string(e.max_var()) + " exceeds s=" + std::to_string(s));
    };
    for (const Expr& e : p_exprs) check_vars(e);
    for (const Expr& e : q_exprs) check_vars(e);
}

Subspace p_tilde(const std::vector<Expr>& p, Index k, const SubspaceSystem& system) {
    if (p.size() < 2) throw SemanticError("p_tilde: need at least two expressions");
    if (k < 0 || k >= static_cast<Index>(p.size()))
        throw SemanticError("p_tilde: index out of range");
    Subspace acc = Subspace::zero(system.ambient_dim());
    for (Index j = 0; j < static_cast<Index>(p.size()); ++j) {
        if (j == k) continue;
        acc = sum(acc, p[static_cast<std::size_t>(j)].evaluate(system));
    }
    return acc;
}

namespace {

std::string dims_text(const std::vector<Index>& dims) {
    std::string out = "(";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(dims[i]);
    }
    return out + ")";
}

}  // namespace

RigidityVerdict verify_certificate_with(const Certificate& cert, const SubspaceSystem& system,
                                        const GenPosChecker* checker) {
    cert.validate();
    if (system.dims() != cert.dims)
        throw SemanticError("verify: system dimensions " + dims_text(system.dims()) +
                            " do not match certificate dimensions " + dims_text(cert.dims));
    const Index n = cert.n;
    if (system.ambient_dim() != n)
        throw SemanticError("verify: ambient dimension mismatch");

    GenPosVerdict gp = checker ? checker->check(system) : pairwise_atoms_in_general_position(system);
    if (!gp.in_general_position) {
        std::ostringstream os;
        os << "pair (" << gp.witness->p.str() << ", " << gp.witness->q.str() << "): dim sum "
           << gp.witness->dim_sum << ", expected " << gp.witness->dim_expected;
        return {false, RigidityFailure::NotGeneralPosition, os.str()};
    }

    const Index K = cert.k_count();
    std::vector<Subspace> p_vals;
    p_vals.reserve(static_cast<std::size_t>(K));
    for (const Expr& e : cert.p_exprs) p_vals.push_back(e.evaluate(system));
    std::vector<Subspace> q_vals;
    for (const Expr& e : cert.q_exprs) q_vals.push_back(e.evaluate(system));

    std::vector<Subspace> tildes;  // p_tilde(k) for k = 0..K-1
    tildes.reserve(static_cast<std::size_t>(K));
    for (Index k = 0; k < K; ++k) {
        Subspace acc = Subspace::zero(n);
        for (Index j = 0; j < K; ++j)
            if (j != k) acc = sum(acc, p_vals[static_cast<std::size_t>(j)]);
        tildes.push_back(std::move(acc));
    }

    // Condition 1: E_target inside P~_1.
    const Subspace& target_space = system.member(cert.target - 1);
    if (!tildes[0].contains(target_space)) {
        std::ostringstream os;
        os << "E_" << cert.target << " (dim " << target_space.dim()
           << ") not contained in P~_1 (dim " << tildes[0].dim() << ")";
        return {false, RigidityFailure::Cond1, os.str()};
    }

    // Condition 2: the parts form a direct sum equal to C^n.
    Subspace running = p_vals[0];
    for (Index k = 1; k < K; ++k) {
        const Subspace& next = p_vals[static_cast<std::size_t>(k)];
        if (dim_of_sum(running, next) != running.dim() + next.dim()) {
            std::ostringstream os;
            os << "P_" << (k + 1) << " (dim " << next.dim()
               << ") overlaps the sum of its predecessors (dim " << running.dim() << ")";
            return {false, RigidityFailure::Cond2, os.str()};
        }
        running = sum(running, next);
    }
    if (running.dim() != n) {
        std::ostringstream os;
        os << "direct sum of parts has dim " << running.dim() << ", expected " << n;
        return {false, RigidityFailure::Cond2, os.str()};
    }

    // Condition 3 for every consecutive pair of parts.
    for (Index k = 0; k + 1 < K; ++k) {
        const auto& index_set = cert.i_sets[static_cast<std::size_t>(k)];
        Subspace q_sum = Subspace::zero(n);
        for (int l : index_set) q_sum = sum(q_sum, q_vals[static_cast<std::size_t>(l - 1)]);
        for (Index which : {k, k + 1}) {
            if (dim_of_sum(tildes[static_cast<std::size_t>(which)], q_sum) != n) {
                std::ostringstream os;
                os << "P~_" << (which + 1) << " (dim " << tildes[static_cast<std::size_t>(which)].dim()
                   << ") + selected Q (dim " << q_sum.dim() << ") falls short of C^" << n
                   << " at k=" << (k + 1);
                return {false, RigidityFailure::Cond3Sum, os.str()};
            }
        }
        for (int l : index_set) {
            const Subspace& q = q_vals[static_cast<std::size_t>(l - 1)];
            for (Index which : {k, k + 1}) {
                Index meet = tildes[static_cast<std::size_t>(which)].dim() + q.dim() -
                             dim_of_sum(tildes[static_cast<std::size_t>(which)], q);
                if (meet != 0) {
                    std::ostringstream os;
                    os << "P~_" << (which + 1) << " meets Q_" << l << " in dim " << meet
                       << " at k=" << (k + 1);
                    return {false, RigidityFailure::Cond3Meet, os.str()};
                }
            }
        }
    }
    return {true, std::nullopt, ""};
}

RigidityVerdict verify_certificate(const Certificate& cert, const SubspaceSystem& system,
                                   int genpos_budget) {
    const int s = static_cast<int>(system.size());
    if (s <= genpos_budget) {
        GenPosChecker checker(s, genpos_budget);
        return verify_certificate_with(cert, system, &checker);
    }
    // Beyond the budget the full decision procedure is unaffordable; fall
    // back to the pairwise-atom sieve, a necessary condition.
    return verify_certificate_with(cert, system, nullptr);
}

GenericVerdict verify_certificate_generic(const Certificate& cert, int trials,
                                          std::uint64_t seed, int genpos_budget,
                                          long entry_range) {
    cert.validate();
    if (trials < 1) throw SemanticError("verify: trials must be >= 1");
    const int s = static_cast<int>(cert.dims.size());
    std::optional<GenPosChecker> checker;
    if (s <= genpos_budget) checker.emplace(s, genpos_budget);

    GenericVerdict out;
    out.trials = trials;
    Rng root = Rng(seed).derive("verify-generic");
    for (int t = 0; t < trials; ++t) {
        Rng trial_rng = root.derive(static_cast<std::uint64_t>(t));
        SubspaceSystem e = random_system(cert.n, cert.dims, trial_rng, entry_range);
        RigidityVerdict v =
            verify_certificate_with(cert, e, checker ? &*checker : nullptr);
        if (!v.holds && v.failed_condition == RigidityFailure::NotGeneralPosition) {
            ++out.skipped;
            continue;
        }
        if (!v.holds) {
            out.verdict = std::move(v);
            return out;
        }
        ++out.passed;
    }
    if (out.passed == 0)
        throw InternalError("verify: every draw failed the general-position precheck; "
                            "entry range too small for these dimensions");
    out.verdict = {true, std::nullopt, ""};
    return out;
}

Certificate cert_lines(Index n, Index s, int target) {
    if (n < 2) throw SemanticError("cert_lines: ambient dimension must be at least 2");
    if (target < 1 || target > s) throw SemanticError("cert_lines: target out of range");
    if (s <= n)
        throw SemanticError("cert_lines: no certificate exists for s <= n (s=" +
                            std::to_string(s) + ", n=" + std::to_string(n) +
                            "); see the certificate search for refutations");
    std::vector<int> others;
    for (Index j = 1; j <= s; ++j)
        if (static_cast<int>(j) != target) others.push_back(static_cast<int>(j));

    // P_2..P_n: the target plus the n-2 smallest spare indices.
    std::vector<Expr> p;
    p.reserve(static_cast<std::size_t>(n));
    std::vector<int> rest(others.begin() + (n - 2), others.end());
    p.push_back(Expr::var(rest.back()));  // P_1: the largest remaining index
    p.push_back(Expr::var(target));
    for (Index j = 0; j < n - 2; ++j) p.push_back(Expr::var(others[static_cast<std::size_t>(j)]));

    Certificate cert;
    cert.n = n;
    cert.dims.assign(static_cast<std::size_t>(s), 1);
    cert.target = target;
    cert.p_exprs = std::move(p);
    cert.q_exprs = {Expr::var(rest.front())};  // the smallest remaining index
    cert.i_sets.assign(static_cast<std::size_t>(n - 1), {1});
    cert.validate();
    return cert;
}

Certificate cert_hyperplanes(Index n, Index s, int target) {
    if (n < 2) throw SemanticError("cert_hyperplanes: ambient dimension must be at least 2");
    if (target < 1 || target > s) throw SemanticError("cert_hyperplanes: target out of range");
    if (s <= n)
        throw SemanticError("cert_hyperplanes: no certificate exists for s <= n (s=" +
                            std::to_string(s) + ", n=" + std::to_string(n) + ")");
    std::vector<int> others;
    for (Index j = 1; j <= s; ++j)
        if (static_cast<int>(j) != target) others.push_back(static_cast<int>(j));

    // Chosen hyperplanes: the target first, then n-1 spares; P_k drops the
    // k-th of them, so every P_k with k >= 2 lies inside E_target.
    std::vector<int> chosen{target};
    for (Index j = 0; j < n - 1; ++j) chosen.push_back(others[static_cast<std::size_t>(j)]);
    const int fresh = others[static_cast<std::size_t>(n - 1)];

    std::vector<Expr> p;
    for (Index k = 0; k < n; ++k) {
        std::vector<Expr> atoms;
        for (Index j = 0; j < n; ++j)
            if (j != k) atoms.push_back(Expr::var(chosen[static_cast<std::size_t>(j)]));
        p.push_back(Expr::meet(std::move(atoms)));
    }
    std::vector<Expr> q;
    std::vector<std::vector<int>> i_sets;
    for (Index l = 0; l + 1 < n; ++l) {
        Expr plane = Expr::sum({p[static_cast<std::size_t>(l)], p[static_cast<std::size_t>(l + 1)]});
        q.push_back(Expr::meet({std::move(plane), Expr::var(fresh)}));
        i_sets.push_back({static_cast<int>(l) + 1});
    }

    Certificate cert;
    cert.n = n;
    cert.dims.assign(static_cast<std::size_t>(s), n - 1);
    cert.target = target;
    cert.p_exprs = std::move(p);
    cert.q_exprs = std::move(q);
    cert.i_sets = std::move(i_sets);
    cert.validate();
    return cert;
}

Index splitting_count(Index n) {
    if (n < 2) throw SemanticError("splitting_count: n must be at least 2");
    return n * (n - 1) / 2 + 1;
}

Index n_bound(Index n) {
    if (n < 2) throw SemanticError("n_bound: n must be at least 2");
    return (n + 1) * splitting_count(n);
}

namespace {

struct Splitting {
    Expr w;
    Expr z;
};

// Core of the splitting construction, on explicitly labeled members so the
// recursion can run inside a chart of Z while emitting expressions over the
// original variables.
Splitting split_labeled(const std::vector<int>& labels, const std::vector<Subspace>& subs,
                        Index n, std::optional<int> prefer) {
    const std::size_t count = labels.size();
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const bool pa = prefer && labels[a] == *prefer;
        const bool pb = prefer && labels[b] == *prefer;
        if (pa != pb) return pa;
        if (subs[a].dim() != subs[b].dim()) return subs[a].dim() > subs[b].dim();
        return labels[a] < labels[b];
    });

    Subspace z = Subspace::zero(n);
    std::vector<std::size_t> atoms;
    for (std::size_t idx : order) {
        if (dim_of_sum(z, subs[idx]) == z.dim() + subs[idx].dim()) {
            z = sum(z, subs[idx]);
            atoms.push_back(idx);
        }
    }

    auto atom_sum = [&](const std::vector<std::size_t>& which) {
        std::vector<Expr> vars;
        vars.reserve(which.size());
        for (std::size_t idx : which) vars.push_back(Expr::var(labels[idx]));
        return Expr::sum(std::move(vars));
    };

    if (z.dim() == n) {
        // The greedy sum already fills the space; peel one atom off as W.
        if (atoms.size() < 2)
            throw DegeneracyError("splitting: a single member spans the whole space");
        std::size_t w_at = atoms.front();
        if (prefer && labels[w_at] == *prefer) w_at = atoms[1];
        std::vector<std::size_t> rest;
        for (std::size_t idx : atoms)
            if (idx != w_at) rest.push_back(idx);
        return {Expr::var(labels[w_at]), atom_sum(rest)};
    }

    // Recurse on the nonzero traces E_j & Z inside Z.
    const Index d = z.dim();
    std::vector<int> sub_labels;
    std::vector<Subspace> sub_spaces;
    for (std::size_t idx = 0; idx < count; ++idx) {
        if (std::find(atoms.begin(), atoms.end(), idx) != atoms.end()) continue;
        Subspace trace = intersect(subs[idx], z);
        if (trace.dim() == 0 || trace.dim() >= d) continue;  // useless for the chart
        Mat coords(trace.dim(), d);
        for (Index r = 0; r < trace.dim(); ++r) {
            auto c = z.coords_of(RowVec(trace.basis().row(r)));
            coords.row(r) = *c;
        }
        sub_labels.push_back(labels[idx]);
        sub_spaces.push_back(Subspace::from_spanning(d, coords));
    }
    if (sub_labels.empty())
        throw DegeneracyError("splitting: no usable members remain for the recursion");
    Splitting inner = split_labeled(sub_labels, sub_spaces, d, std::nullopt);
    return {Expr::meet({inner.w, inner.z}), atom_sum(atoms)};
}

Subspace eval_on(const Expr& e, const SubspaceSystem& system) { return e.evaluate(system); }

}  // namespace

std::pair<Expr, Expr> find_splitting(const SubspaceSystem& system, std::optional<int> prefer,
                                     int genpos_budget) {
    const Index n = system.ambient_dim();
    const Index s = system.size();
    if (s < splitting_count(n))
        throw SemanticError("splitting: needs at least s(n) = " +
                            std::to_string(splitting_count(n)) + " members, got " +
                            std::to_string(s));
    for (Index d : system.dims())
        if (d < 1 || d > n - 1)
            throw SemanticError("splitting: member dimensions must lie in 1..n-1");
    GenPosVerdict gp = s <= genpos_budget ? system_in_general_position(system, genpos_budget)
                                          : pairwise_atoms_in_general_position(system);
    if (!gp.in_general_position)
        throw DegeneracyError("splitting: system is not in general position (pair " +
                              gp.witness->p.str() + ", " + gp.witness->q.str() + ")");

    std::vector<int> labels;
    for (Index j = 1; j <= s; ++j) labels.push_back(static_cast<int>(j));
    Splitting split = split_labeled(labels, system.members(), n, prefer);

    Subspace w = eval_on(split.w, system);
    Subspace z = eval_on(split.z, system);
    if (w.dim() == 0 || z.dim() == 0 || w.dim() + z.dim() != n || dim_of_sum(w, z) != n)
        throw DegeneracyError("splitting: construction failed the direct-sum check (dims " +
                              std::to_string(w.dim()) + " and " + std::to_string(z.dim()) + ")");
    return {split.w, split.z};
}

Certificate build_certificate(Index n, const std::vector<Index>& dims, int target,
                              const BuildOptions& options) {
    const Index s = static_cast<Index>(dims.size());
    const Index block_size = splitting_count(n);
    if (s < n_bound(n))
        throw SemanticError("build: needs s >= N(n) = " + std::to_string(n_bound(n)) +
                            ", got " + std::to_string(s));
    for (Index d : dims)
        if (d < 1 || d > n - 1)
            throw SemanticError("build: dimensions must lie in 1..n-1");
    if (target < 1 || target > static_cast<int>(s))
        throw SemanticError("build: target out of range");

    // n+1 blocks of size s(n); indices beyond N(n) stay unused. The target
    // lands in the last block, whose splitting supplies P.
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(n + 1));
    for (Index j = 0; j < n_bound(n); ++j)
        blocks[static_cast<std::size_t>(j / block_size)].push_back(static_cast<int>(j) + 1);
    auto& last = blocks.back();
    if (std::find(last.begin(), last.end(), target) == last.end()) {
        for (auto& block : blocks) {
            auto it = std::find(block.begin(), block.end(), target);
            if (it != block.end()) {
                std::swap(*it, last.front());
                break;
            }
        }
    }

    GenPosChecker block_checker(static_cast<int>(block_size), options.genpos_budget);
    Rng root = Rng(options.seed).derive("build-certificate");
    std::string last_failure = "no attempts made";

    for (int attempt = 0; attempt < options.attempts; ++attempt) {
        Rng attempt_rng = root.derive(static_cast<std::uint64_t>(attempt));
        SubspaceSystem instance = random_system(n, dims, attempt_rng, options.entry_range);

        try {
            std::vector<Splitting> splittings;
            bool degenerate = false;
            for (std::size_t b = 0; b < blocks.size(); ++b) {
                std::vector<Subspace> members;
                for (int label : blocks[b]) members.push_back(instance.member(label - 1));
                if (!block_checker.check(SubspaceSystem(n, members)).in_general_position) {
                    degenerate = true;
                    break;
                }
                std::optional<int> prefer;
                if (b + 1 == blocks.size()) prefer = target;
                splittings.push_back(
                    split_labeled(blocks[b], members, n, prefer));
            }
            if (degenerate) {
                last_failure = "a block failed the general-position check";
                continue;
            }

            const Splitting& head = splittings.back();
            Subspace p1_val = eval_on(head.w, instance);
            Subspace p2_val = eval_on(head.z, instance);
            if (p1_val.dim() + p2_val.dim() != n || dim_of_sum(p1_val, p2_val) != n ||
                !p2_val.contains(instance.member(target - 1))) {
                last_failure = "target-block splitting failed its checks";
                continue;
            }

            // Smaller part of every other block is a Q candidate.
            std::vector<Expr> q_exprs;
            std::vector<Index> q_dims;
            for (std::size_t b = 0; b + 1 < splittings.size(); ++b) {
                Subspace wv = eval_on(splittings[b].w, instance);
                Subspace zv = eval_on(splittings[b].z, instance);
                if (wv.dim() <= zv.dim()) {
                    q_exprs.push_back(splittings[b].w);
                    q_dims.push_back(wv.dim());
                } else {
                    q_exprs.push_back(splittings[b].z);
                    q_dims.push_back(zv.dim());
                }
            }

            const Index cap = std::min(p1_val.dim(), p2_val.dim());
            const Index need = std::max(p1_val.dim(), p2_val.dim());
            std::vector<std::size_t> usable;
            for (std::size_t l = 0; l < q_dims.size(); ++l)
                if (q_dims[l] <= cap) usable.push_back(l);
            std::sort(usable.begin(), usable.end(), [&](std::size_t a, std::size_t b) {
                if (q_dims[a] != q_dims[b]) return q_dims[a] > q_dims[b];
                return a < b;
            });
            std::vector<int> selected;
            Index total = 0;
            for (std::size_t l : usable) {
                if (total >= need) break;
                selected.push_back(static_cast<int>(l) + 1);
                total += q_dims[l];
            }
            if (total < need) {
                last_failure = "not enough small block parts to cover condition 3";
                continue;
            }
            std::sort(selected.begin(), selected.end());

            Certificate cert;
            cert.n = n;
            cert.dims = dims;
            cert.target = target;
            cert.p_exprs = {head.w, head.z};
            cert.q_exprs = q_exprs;
            cert.i_sets = {selected};
            cert.validate();

            Rng verify_rng = attempt_rng.derive("self-verify");
            GenericVerdict gv = verify_certificate_generic(cert, options.trials,
                                                           verify_rng.next(),
                                                           options.genpos_budget,
                                                           options.entry_range);
            if (gv.verdict.holds) return cert;
            last_failure = "generic verification failed: " +
                           to_string(*gv.verdict.failed_condition) + " (" + gv.verdict.detail + ")";
        } catch (const DegeneracyError& e) {
            last_failure = e.what();
        }
    }
    throw DegeneracyError("build: no verified certificate after " +
                          std::to_string(options.attempts) + " attempts; last failure: " +
                          last_failure);
}

namespace {

struct ExprEntry {
    Expr expr;
    Subspace value;  // on the probe instance
    Index dim;
};

}  // namespace

std::optional<Certificate> search_certificate(Index n, const std::vector<Index>& dims,
                                              int target, const SearchOptions& options) {
    const Index s = static_cast<Index>(dims.size());
    if (s > 5)
        throw ResourceError("search: exhaustive certificate search is limited to s <= 5");
    if (s < 1) throw SemanticError("search: empty dimension tuple");
    if (target < 1 || target > static_cast<int>(s))
        throw SemanticError("search: target out of range");

    GenPosChecker checker(static_cast<int>(s), options.genpos_budget);
    Rng root = Rng(options.seed).derive("search-certificate");

    // Probe instance: one general-position draw; conditions 1-3 are Zariski
    // open or closed, so failing here refutes a candidate outright.
    std::optional<SubspaceSystem> probe;
    for (int t = 0; t < 32 && !probe; ++t) {
        Rng r = root.derive(static_cast<std::uint64_t>(t));
        SubspaceSystem e = random_system(n, dims, r, options.entry_range);
        if (checker.check(e).in_general_position) probe = std::move(e);
    }
    if (!probe)
        throw InternalError("search: no general-position probe instance found");

    std::vector<ExprEntry> table;
    for (std::size_t mask = 1; mask < (std::size_t{1} << s); ++mask) {
        std::set<int> vars;
        for (Index v = 0; v < s; ++v)
            if (mask >> v & 1u) vars.insert(static_cast<int>(v) + 1);
        for (Expr& e : enumerate_multilinear(vars, static_cast<int>(s))) {
            Subspace value = e.evaluate(*probe);
            Index d = value.dim();
            table.push_back({std::move(e), std::move(value), d});
        }
    }

    const Subspace& target_space = probe->member(target - 1);
    const std::size_t m = table.size();

    // Usable Q entries per k need both meets zero; precomputed lazily per
    // P-tuple below. P-tuples are screened on nonzero parts, the incremental
    // direct-sum condition, and condition 1 before Q enumeration.
    std::vector<std::size_t> stack;
    std::optional<Certificate> found;

    auto verify_candidate = [&](Certificate& cert) -> bool {
        cert.validate();
        Rng verify_rng = root.derive("verify");
        GenericVerdict gv = verify_certificate_generic(cert, options.trials, verify_rng.next(),
                                                       options.genpos_budget, options.entry_range);
        return gv.verdict.holds;
    };

    auto try_q_for_parts = [&](const std::vector<std::size_t>& parts) -> bool {
        const Index K = static_cast<Index>(parts.size());
        std::vector<Subspace> tildes;
        for (Index k = 0; k < K; ++k) {
            Subspace acc = Subspace::zero(n);
            for (Index j = 0; j < K; ++j)
                if (j != k) acc = sum(acc, table[parts[static_cast<std::size_t>(j)]].value);
            tildes.push_back(std::move(acc));
        }
        // Condition 1 on the probe.
        if (!tildes[0].contains(target_space)) return false;

        // Q candidates usable at step k: nonzero, zero meet with both tildes.
        std::vector<std::vector<char>> usable(static_cast<std::size_t>(K - 1),
                                              std::vector<char>(m, 0));
        std::vector<std::size_t> candidates;
        for (std::size_t e = 0; e < m; ++e) {
            if (table[e].dim == 0) continue;
            bool any = false;
            for (Index k = 0; k + 1 < K; ++k) {
                bool ok = true;
                for (Index which : {k, k + 1}) {
                    const Subspace& t = tildes[static_cast<std::size_t>(which)];
                    if (dim_of_sum(t, table[e].value) != t.dim() + table[e].dim) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    usable[static_cast<std::size_t>(k)][e] = 1;
                    any = true;
                }
            }
            if (any) candidates.push_back(e);
        }
        if (candidates.empty()) return false;

        // Q subsets of bounded size, in combination order; I_k is the
        // maximal usable subset (more summands never hurt the sum side).
        std::vector<std::size_t> combo;
        auto attempt_combo = [&]() -> bool {
            std::vector<std::vector<int>> i_sets;
            for (Index k = 0; k + 1 < K; ++k) {
                std::vector<int> set;
                Subspace q_sum = Subspace::zero(n);
                for (std::size_t pos = 0; pos < combo.size(); ++pos) {
                    if (!usable[static_cast<std::size_t>(k)][combo[pos]]) continue;
                    set.push_back(static_cast<int>(pos) + 1);
                    q_sum = sum(q_sum, table[combo[pos]].value);
                }
                if (set.empty()) return false;
                for (Index which : {k, k + 1})
                    if (dim_of_sum(tildes[static_cast<std::size_t>(which)], q_sum) != n)
                        return false;
                i_sets.push_back(std::move(set));
            }
            Certificate cert;
            cert.n = n;
            cert.dims = dims;
            cert.target = target;
            for (std::size_t p : parts) cert.p_exprs.push_back(table[p].expr);
            for (std::size_t e : combo) cert.q_exprs.push_back(table[e].expr);
            cert.i_sets = std::move(i_sets);
            if (!verify_candidate(cert)) return false;
            found = std::move(cert);
            return true;
        };
        std::function<bool(std::size_t, int)> grow = [&](std::size_t from, int left) -> bool {
            if (!combo.empty() && attempt_combo()) return true;
            if (left == 0) return false;
            for (std::size_t c = from; c < candidates.size(); ++c) {
                combo.push_back(candidates[c]);
                if (grow(c + 1, left - 1)) return true;
                combo.pop_back();
            }
            return false;
        };
        return grow(0, options.max_l);
    };

    // Grow P-tuples depth-first with the incremental direct-sum screen.
    std::function<bool(Subspace, Index)> grow_parts = [&](Subspace running, Index depth) -> bool {
        if (depth >= 2 && running.dim() == n) {
            if (try_q_for_parts(stack)) return true;
        }
        if (depth == static_cast<Index>(options.max_k) || running.dim() == n) return false;
        for (std::size_t e = 0; e < m; ++e) {
            if (table[e].dim == 0) continue;
            if (running.dim() + table[e].dim > n) continue;
            if (dim_of_sum(running, table[e].value) != running.dim() + table[e].dim) continue;
            stack.push_back(e);
            if (grow_parts(sum(running, table[e].value), depth + 1)) return true;
            stack.pop_back();
        }
        return false;
    };

    grow_parts(Subspace::zero(n), 0);
    return found;
}

}  // namespace charweb
