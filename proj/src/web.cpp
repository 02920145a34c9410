#include "charweb/web.hpp"

#include "charweb/errors.hpp"

namespace charweb {

namespace {

RowVec sample_point(Index n, Rng& rng, long entry_range) {
    RowVec z(n);
    for (Index j = 0; j < n; ++j) z(j) = GQ(rng.uniform_int(-entry_range, entry_range));
    return z;
}

Subspace kernel_subspace(const Mat& jacobian, Index n) {
    Mat z = right_kernel<GQ>(jacobian);
    return Subspace::from_spanning(n, Mat(z.transpose()));
}

std::vector<Index> baseline_ranks(const PolyhedralPresentation& pres, std::uint64_t seed,
                                  long entry_range) {
    Rng root = Rng(seed).derive("web-rank-baseline");
    std::vector<Index> best(static_cast<std::size_t>(pres.size()), 0);
    for (int t = 0; t < kRankSamplePoints; ++t) {
        Rng trial = root.derive(static_cast<std::uint64_t>(t));
        RowVec z = sample_point(pres.n, trial, entry_range);
        for (Index i = 0; i < pres.size(); ++i) {
            Index r = rank_of<GQ>(pres.defs[static_cast<std::size_t>(i)].jacobian_at(z));
            best[static_cast<std::size_t>(i)] = std::max(best[static_cast<std::size_t>(i)], r);
        }
    }
    return best;
}

}  // namespace

SubspaceSystem tangent_system(const PolyhedralPresentation& pres, const RowVec& z,
                              std::uint64_t seed, long entry_range) {
    pres.validate();
    if (z.cols() != pres.n)
        throw SemanticError("tangent: point length does not match the ambient dimension");
    std::vector<Index> generic_rank = baseline_ranks(pres, seed, entry_range);
    std::vector<Subspace> members;
    members.reserve(static_cast<std::size_t>(pres.size()));
    for (Index i = 0; i < pres.size(); ++i) {
        Mat j = pres.defs[static_cast<std::size_t>(i)].jacobian_at(z);
        const Index rank = rank_of<GQ>(j);
        if (rank < generic_rank[static_cast<std::size_t>(i)])
            throw DegeneracyError("tangent: defining map " + std::to_string(i + 1) +
                                  " is singular at the given point (rank " +
                                  std::to_string(rank) + " < generic rank " +
                                  std::to_string(generic_rank[static_cast<std::size_t>(i)]) + ")");
        members.push_back(kernel_subspace(j, pres.n));
    }
    return SubspaceSystem(pres.n, std::move(members));
}

WebReport web_report(const PolyhedralPresentation& pres, const RowVec& z, std::uint64_t seed,
                     int genpos_budget, long entry_range) {
    SubspaceSystem tangents = tangent_system(pres, z, seed, entry_range);

    WebReport report;
    report.n = pres.n;
    report.dims = tangents.dims();
    report.s = pres.size();
    report.genpos = system_in_general_position(tangents, genpos_budget);
    report.bound = pres.n >= 2 ? n_bound(pres.n) : 0;
    report.rigid_by_count = pres.n >= 2 && report.s >= report.bound;

    const bool all_lines = std::all_of(report.dims.begin(), report.dims.end(),
                                       [](Index d) { return d == 1; });
    const bool all_hyper = std::all_of(report.dims.begin(), report.dims.end(),
                                       [&](Index d) { return d == pres.n - 1; });
    if (pres.n >= 2 && (all_lines || all_hyper))
        report.rigid_small_tuple = report.s >= pres.n + 1;
    report.rigid = report.rigid_by_count || (report.rigid_small_tuple && *report.rigid_small_tuple);

    // Tangential containment among the decompositions over the sample set:
    // (i, j) is reported when ker dg_i <= ker dg_j held at every usable
    // sample point (and at z itself).
    Rng root = Rng(seed).derive("web-containment");
    std::vector<Index> generic_rank = baseline_ranks(pres, seed, entry_range);
    for (Index i = 0; i < pres.size(); ++i) {
        for (Index j = 0; j < pres.size(); ++j) {
            if (i == j) continue;
            if (!tangents.member(j).contains(tangents.member(i))) continue;
            bool everywhere = true;
            for (int t = 0; t < kRankSamplePoints && everywhere; ++t) {
                Rng trial = root.derive(static_cast<std::uint64_t>(t));
                RowVec p = sample_point(pres.n, trial, entry_range);
                Mat ji = pres.defs[static_cast<std::size_t>(i)].jacobian_at(p);
                Mat jj = pres.defs[static_cast<std::size_t>(j)].jacobian_at(p);
                if (rank_of<GQ>(ji) < generic_rank[static_cast<std::size_t>(i)] ||
                    rank_of<GQ>(jj) < generic_rank[static_cast<std::size_t>(j)])
                    continue;  // singular sample, skip
                if (!kernel_subspace(jj, pres.n).contains(kernel_subspace(ji, pres.n)))
                    everywhere = false;
            }
            if (everywhere)
                report.containment_pairs.emplace_back(static_cast<int>(i) + 1,
                                                      static_cast<int>(j) + 1);
        }
    }
    return report;
}

}  // namespace charweb
