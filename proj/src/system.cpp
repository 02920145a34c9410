#include "charweb/system.hpp"

namespace charweb {

Rng Rng::derive(std::string_view label) const {
    // FNV-1a over the label, folded into the parent state.
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    Rng child(0);
    child.state_ = mix(state_ ^ h);
    return child;
}

Rng Rng::derive(std::uint64_t salt) const {
    Rng child(0);
    child.state_ = mix(state_ ^ mix(salt + 0x5851f42d4c957f2dull));
    return child;
}

long Rng::uniform_int(long lo, long hi) {
    if (hi < lo) throw SemanticError("uniform_int: empty range");
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t v;
    do {
        v = next();
    } while (v >= limit);
    return lo + static_cast<long>(v % span);
}

SubspaceSystem::SubspaceSystem(Index n, std::vector<Subspace> members)
    : n_(n), members_(std::move(members)) {
    for (const Subspace& m : members_) {
        if (m.ambient_dim() != n_)
            throw SemanticError("system: member ambient dimension " +
                                std::to_string(m.ambient_dim()) + " differs from " +
                                std::to_string(n_));
    }
}

const Subspace& SubspaceSystem::member(Index i) const {
    if (i < 0 || i >= size()) throw SemanticError("system: member index out of range");
    return members_[static_cast<std::size_t>(i)];
}

std::vector<Index> SubspaceSystem::dims() const {
    std::vector<Index> d;
    d.reserve(members_.size());
    for (const Subspace& m : members_) d.push_back(m.dim());
    return d;
}

Subspace random_subspace(Index n, Index dim, Rng& rng, long entry_range) {
    if (dim < 0 || dim > n)
        throw SemanticError("random_subspace: dimension must lie in 0..n");
    if (dim == 0) return Subspace::zero(n);
    constexpr int kMaxAttempts = 64;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        Mat rows(dim, n);
        for (Index i = 0; i < dim; ++i)
            for (Index j = 0; j < n; ++j)
                rows(i, j) = GQ(rng.uniform_int(-entry_range, entry_range));
        Subspace s = Subspace::from_spanning(n, rows);
        if (s.dim() == dim) return s;
    }
    throw InternalError("random_subspace: rank-deficient draws exhausted the retry bound; "
                        "entry range too small");
}

SubspaceSystem random_system(Index n, const std::vector<Index>& dims, Rng& rng,
                             long entry_range) {
    std::vector<Subspace> members;
    members.reserve(dims.size());
    for (Index d : dims) members.push_back(random_subspace(n, d, rng, entry_range));
    return SubspaceSystem(n, std::move(members));
}

SubspaceSystem random_system(Index n, const std::vector<Index>& dims, std::uint64_t seed,
                             long entry_range) {
    Rng rng = Rng(seed).derive("system");
    return random_system(n, dims, rng, entry_range);
}

}  // namespace charweb
