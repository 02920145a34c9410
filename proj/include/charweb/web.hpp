#pragma once

#include "charweb/genpos.hpp"
#include "charweb/poly.hpp"
#include "charweb/rigidity.hpp"

namespace charweb {

inline constexpr int kRankSamplePoints = 32;

/// Tangent spaces at z of the level sets through z, one per defining map:
/// the kernels of the evaluated Jacobians, of dimension n - rank.
///
/// Each map must attain its generic (maximal) rank at z. The baseline rank
/// is taken as the maximum over seeded random sample points; a smaller rank
/// at z means z sits in the singular locus and raises a DegeneracyError
/// naming the offending map.
SubspaceSystem tangent_system(const PolyhedralPresentation& pres, const RowVec& z,
                              std::uint64_t seed = 0, long entry_range = kDefaultEntryRange);

struct WebReport {
    Index n = 0;
    std::vector<Index> dims;  // tangent dimension tuple at z
    GenPosVerdict genpos;     // full check of the tangent system at z
    Index s = 0;              // number of characteristic decompositions
    Index bound = 0;          // N(n)
    bool rigid_by_count = false;             // s >= N(n)
    std::optional<bool> rigid_small_tuple;   // tuple all 1s or all (n-1)s: s >= n+1
    bool rigid = false;                      // either sufficient condition
    /// Pairs (i, j), 1-based, whose kernels satisfied ker dg_i <= ker dg_j
    /// at every sample point: decomposition i is tangentially refined by j,
    /// so i is not maximal. Pointwise tangent data only; connectivity of
    /// level sets is invisible here.
    std::vector<std::pair<int, int>> containment_pairs;
};

/// Pointwise report at z: the tangent dimension tuple, its general-position
/// verdict, and which rigidity bounds apply to the decomposition count.
WebReport web_report(const PolyhedralPresentation& pres, const RowVec& z,
                     std::uint64_t seed = 0, int genpos_budget = kDefaultGenPosBudget,
                     long entry_range = kDefaultEntryRange);

}  // namespace charweb
