#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "charweb/subspace.hpp"

namespace charweb {

/// Deterministic splittable generator. Every piece of randomness in the
/// project flows from one root seed through named derive() calls, so
/// independent consumers cannot interfere with each other's streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed ^ 0x243f6a8885a308d3ull)) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    /// Child stream independent of this one; does not advance this stream.
    Rng derive(std::string_view label) const;
    Rng derive(std::uint64_t salt) const;

    /// Uniform integer in [lo, hi], inclusive. Implemented by rejection on
    /// the raw 64-bit stream so results do not depend on the platform.
    long uniform_int(long lo, long hi);

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

/// Ordered tuple (E_1, ..., E_s) of subspaces of one ambient C^n.
class SubspaceSystem {
public:
    SubspaceSystem(Index n, std::vector<Subspace> members);

    Index ambient_dim() const { return n_; }
    Index size() const { return static_cast<Index>(members_.size()); }
    /// 0-based access; expression variables X1..Xs map to members 0..s-1.
    const Subspace& member(Index i) const;
    const std::vector<Subspace>& members() const { return members_; }
    std::vector<Index> dims() const;

    friend bool operator==(const SubspaceSystem& a, const SubspaceSystem& b) {
        return a.n_ == b.n_ && a.members_ == b.members_;
    }

private:
    Index n_;
    std::vector<Subspace> members_;
};

inline constexpr long kDefaultEntryRange = 100;

/// Random subspace of the exact requested dimension; spanning rows have
/// integer entries drawn uniformly from [-entry_range, entry_range] and are
/// re-drawn on rank deficiency (bounded; exhaustion is an InternalError).
Subspace random_subspace(Index n, Index dim, Rng& rng, long entry_range = kDefaultEntryRange);

/// Deterministic random system: same seed, same system.
SubspaceSystem random_system(Index n, const std::vector<Index>& dims, std::uint64_t seed,
                             long entry_range = kDefaultEntryRange);
SubspaceSystem random_system(Index n, const std::vector<Index>& dims, Rng& rng,
                             long entry_range = kDefaultEntryRange);

}  // namespace charweb
