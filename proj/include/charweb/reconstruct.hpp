#pragma once

#include <map>

#include "charweb/linear_map.hpp"
#include "charweb/rigidity.hpp"

namespace charweb {

/// One diagonal block of a map between the two part decompositions:
/// P_k(E) -> P_k(E'). k is 0-based.
struct BlockMap {
    Index k = 0;
    LinearMap map;
};

/// Projection machinery for reconstructing a block-diagonal, Q-preserving
/// linear map from any single block, built from a certificate and two
/// verified instances E, E'.
///
/// For each k and selected l the plan holds the canonical projections
/// pi_{k,l}: Q_l -> P_k restricted along the complementary parts, the
/// transfer maps between the two projection images, the projections psi of
/// P_k(E') onto the image of pi_{k,l}(E') along a coordinate complement, and
/// marked bases of the parts drawn from projection images. Everything is
/// immutable after construction and safe to share.
class ReconstructionPlan {
public:
    static ReconstructionPlan build(const Certificate& cert, const SubspaceSystem& e,
                                    const SubspaceSystem& e_prime,
                                    int genpos_budget = kDefaultGenPosBudget);

    const Certificate& certificate() const { return cert_; }
    Index block_count() const { return static_cast<Index>(parts_e_.size()); }
    const Subspace& part(Index k) const { return parts_e_[static_cast<std::size_t>(k)]; }
    const Subspace& part_prime(Index k) const { return parts_ep_[static_cast<std::size_t>(k)]; }
    const SubspaceSystem& system() const { return e_; }
    const SubspaceSystem& system_prime() const { return ep_; }

    /// One rung of the ladder: from the block at k to the block at k+1.
    /// On a marked basis vector e_j drawn from the image of pi_{k+1,l} the
    /// image is transfer'(k,l) o psi'(k,l) o g_k o transfer(k,l)^{-1}.
    BlockMap step_forward(const BlockMap& g) const;
    /// The mirrored rung from k to k-1.
    BlockMap step_backward(const BlockMap& g) const;

    /// Chain of steps from g.k to r (either direction; identity at r = g.k).
    BlockMap transport(const BlockMap& g, Index r) const;

    /// The full reconstruction: every block transported from g, assembled
    /// along the direct sums into one map on C^n.
    LinearMap assemble(const BlockMap& g) const;

    /// Extract the k-th diagonal block of a full map; the map must send
    /// P_k(E) into P_k(E').
    BlockMap block_of(const LinearMap& full_map, Index k) const;

private:
    ReconstructionPlan(Certificate cert, SubspaceSystem e, SubspaceSystem ep);

    struct Rung {  // data for the step between parts k and k+1, keyed by l
        std::map<int, LinearMap> fwd_e;      // image of pi_{k,l}(E) -> image of pi_{k+1,l}(E)
        std::map<int, LinearMap> back_e;     // its inverse
        std::map<int, LinearMap> fwd_ep;     // same over E'
        std::map<int, LinearMap> back_ep;
        std::map<int, LinearMap> psi_k_ep;   // P_k(E') -> image of pi_{k,l}(E')
        std::map<int, LinearMap> psi_k1_ep;  // P_{k+1}(E') -> image of pi_{k+1,l}(E')
        Mat fwd_basis;                       // marked basis of P_{k+1}(E)
        std::vector<int> fwd_labels;         // l per marked vector
        Mat bwd_basis;                       // marked basis of P_k(E)
        std::vector<int> bwd_labels;
    };

    Certificate cert_;
    SubspaceSystem e_;
    SubspaceSystem ep_;
    std::vector<Subspace> parts_e_, parts_ep_;
    std::vector<LinearMap> proj_e_;  // C^n -> P_k(E)
    std::vector<Rung> rungs_;        // K-1 entries
};

struct ConstrainedSample {
    LinearMap map;        // on all of C^n
    Index solution_dim;   // dimension of the constraint kernel over Q(i)
};

/// Seeded random solution of the homogeneous system "g maps every P_k(E)
/// into P_k(E') and every Q_l(E) into Q_l(E')". A zero solution space is
/// legal and yields the zero map with solution_dim = 0.
ConstrainedSample sample_constrained_map(const ReconstructionPlan& plan, std::uint64_t seed);

/// Convenience: transport the given block everywhere and assemble, i.e. the
/// reconstruction map applied to one block.
LinearMap phi(const ReconstructionPlan& plan, Index k, const LinearMap& block);

}  // namespace charweb
