#include "charweb/reconstruct.hpp"

#include <sstream>

#include "charweb/errors.hpp"

namespace charweb {

namespace {

[[noreturn]] void degenerate(const std::string& what, Index k, int l) {
    std::ostringstream os;
    os << "reconstruction: " << what << " at (k=" << (k + 1) << ", l=" << l << ")";
    throw DegeneracyError(os.str());
}

// Projection of `part` onto the image of pi inside it, along the coordinate
// complement determined by the echelon pivot structure. The pivot rows of
// the image together with the non-pivot coordinate axes always form a basis
// of the part, so this complement never collapses.
LinearMap psi_onto_image(const Subspace& part, const Subspace& image) {
    const Index p = part.dim();
    const Index s = image.dim();
    Mat coords(s, p);
    for (Index i = 0; i < s; ++i) {
        auto c = part.coords_of(RowVec(image.basis().row(i)));
        if (!c) throw InternalError("psi: projection image escapes its part");
        coords.row(i) = *c;
    }
    Subspace in_coords = Subspace::from_spanning(p, coords);
    Mat frame(p, p);
    frame.topRows(s) = in_coords.basis();
    std::vector<char> pivot(static_cast<std::size_t>(p), 0);
    for (Index c : in_coords.pivot_cols()) pivot[static_cast<std::size_t>(c)] = 1;
    Index at = s;
    for (Index c = 0; c < p; ++c)
        if (!pivot[static_cast<std::size_t>(c)]) frame.row(at++) = RowVec::Unit(p, c);
    Mat inv = invert<GQ>(frame);
    // alpha = (x * inv) restricted to the image block expresses psi(x) in the
    // echelon rows of the image inside the part; convert to the canonical
    // ambient basis of `image`.
    Mat echelon_to_canonical(s, s);
    for (Index i = 0; i < s; ++i) {
        RowVec ambient(RowVec(in_coords.basis().row(i)) * part.basis());
        auto c = image.coords_of(ambient);
        if (!c) throw InternalError("psi: echelon row left the image");
        echelon_to_canonical.row(i) = *c;
    }
    return LinearMap(part, image, Mat(inv.leftCols(s) * echelon_to_canonical));
}

}  // namespace

ReconstructionPlan::ReconstructionPlan(Certificate cert, SubspaceSystem e, SubspaceSystem ep)
    : cert_(std::move(cert)), e_(std::move(e)), ep_(std::move(ep)) {}

ReconstructionPlan ReconstructionPlan::build(const Certificate& cert, const SubspaceSystem& e,
                                             const SubspaceSystem& e_prime, int genpos_budget) {
    for (const auto* pair : {&e, &e_prime}) {
        RigidityVerdict v = verify_certificate(cert, *pair, genpos_budget);
        if (!v.holds)
            throw DegeneracyError("reconstruction: certificate does not hold on the " +
                                  std::string(pair == &e ? "first" : "second") + " system (" +
                                  to_string(*v.failed_condition) + ": " + v.detail + ")");
    }

    ReconstructionPlan plan(cert, e, e_prime);
    const Index n = cert.n;
    const Index K = cert.k_count();

    for (const Expr& p : cert.p_exprs) {
        plan.parts_e_.push_back(p.evaluate(e));
        plan.parts_ep_.push_back(p.evaluate(e_prime));
    }
    std::vector<Subspace> q_e, q_ep;
    for (const Expr& q : cert.q_exprs) {
        q_e.push_back(q.evaluate(e));
        q_ep.push_back(q.evaluate(e_prime));
    }

    std::vector<LinearMap> proj_ep;
    for (Index k = 0; k < K; ++k) {
        plan.proj_e_.push_back(direct_sum_projection(plan.parts_e_, k));
        proj_ep.push_back(direct_sum_projection(plan.parts_ep_, k));
    }

    for (Index k = 0; k + 1 < K; ++k) {
        Rung rung;
        std::map<int, Subspace> images_e_k, images_e_k1;

        for (int l : cert.i_sets[static_cast<std::size_t>(k)]) {
            const Subspace& ql_e = q_e[static_cast<std::size_t>(l - 1)];
            const Subspace& ql_ep = q_ep[static_cast<std::size_t>(l - 1)];

            LinearMap pi_k_e = plan.proj_e_[static_cast<std::size_t>(k)].restricted_to(ql_e);
            LinearMap pi_k1_e = plan.proj_e_[static_cast<std::size_t>(k + 1)].restricted_to(ql_e);
            LinearMap pi_k_ep = proj_ep[static_cast<std::size_t>(k)].restricted_to(ql_ep);
            LinearMap pi_k1_ep = proj_ep[static_cast<std::size_t>(k + 1)].restricted_to(ql_ep);
            for (const auto& [pi, tag] :
                 std::initializer_list<std::pair<const LinearMap*, const char*>>{
                     {&pi_k_e, "pi_k(E)"},
                     {&pi_k1_e, "pi_{k+1}(E)"},
                     {&pi_k_ep, "pi_k(E')"},
                     {&pi_k1_ep, "pi_{k+1}(E')"}}) {
                if (!pi->is_injective()) degenerate(std::string(tag) + " is not injective", k, l);
            }

            rung.fwd_e.emplace(l, pi_k_e.inverse_on_image().then(pi_k1_e));
            rung.back_e.emplace(l, pi_k1_e.inverse_on_image().then(pi_k_e));
            rung.fwd_ep.emplace(l, pi_k_ep.inverse_on_image().then(pi_k1_ep));
            rung.back_ep.emplace(l, pi_k1_ep.inverse_on_image().then(pi_k_ep));

            images_e_k.emplace(l, pi_k_e.image());
            images_e_k1.emplace(l, pi_k1_e.image());

            rung.psi_k_ep.emplace(
                l, psi_onto_image(plan.parts_ep_[static_cast<std::size_t>(k)], pi_k_ep.image()));
            rung.psi_k1_ep.emplace(
                l, psi_onto_image(plan.parts_ep_[static_cast<std::size_t>(k + 1)],
                                  pi_k1_ep.image()));
        }

        // Marked bases: scan the selected l in increasing order, take
        // echelon rows of the projection images while independence holds.
        auto mark_basis = [&](const Subspace& target, const std::map<int, Subspace>& images,
                              Mat& basis, std::vector<int>& labels) {
            const Index want = target.dim();
            basis = Mat(want, n);
            Index have = 0;
            Mat probe(want, n);
            for (const auto& [l, img] : images) {
                for (Index r = 0; r < img.dim() && have < want; ++r) {
                    probe.topRows(have) = basis.topRows(have);
                    probe.row(have) = img.basis().row(r);
                    Mat copy = probe.topRows(have + 1);
                    if (rank_destructive(copy) != have + 1) continue;
                    basis.row(have) = img.basis().row(r);
                    labels.push_back(l);
                    ++have;
                }
                if (have == want) break;
            }
            if (have != want)
                degenerate("projection images do not span the part", k,
                           images.empty() ? 0 : images.begin()->first);
        };
        mark_basis(plan.parts_e_[static_cast<std::size_t>(k + 1)], images_e_k1, rung.fwd_basis,
                   rung.fwd_labels);
        mark_basis(plan.parts_e_[static_cast<std::size_t>(k)], images_e_k, rung.bwd_basis,
                   rung.bwd_labels);

        plan.rungs_.push_back(std::move(rung));
    }
    return plan;
}

namespace {

// Build the map sending marked basis rows to the given image rows, expressed
// on the canonical bases of `from` and `to`.
LinearMap from_marked_images(const Subspace& from, const Subspace& to, const Mat& marked,
                             const Mat& images) {
    const Index m = from.dim();
    Mat t(m, m), c(m, to.dim());
    for (Index j = 0; j < m; ++j) {
        auto tc = from.coords_of(RowVec(marked.row(j)));
        auto cc = to.coords_of(RowVec(images.row(j)));
        if (!tc || !cc) throw InternalError("reconstruction: marked data left its part");
        t.row(j) = *tc;
        c.row(j) = *cc;
    }
    return LinearMap(from, to, Mat(invert<GQ>(t) * c));
}

}  // namespace

BlockMap ReconstructionPlan::step_forward(const BlockMap& g) const {
    const Index k = g.k;
    if (k < 0 || k + 1 >= block_count())
        throw SemanticError("reconstruction: forward step index out of range");
    const Rung& rung = rungs_[static_cast<std::size_t>(k)];
    if (!(g.map.domain() == part(k)) || !(g.map.codomain() == part_prime(k)))
        throw SemanticError("reconstruction: block does not match the plan's parts");

    const Index m = rung.fwd_basis.rows();
    Mat images(m, cert_.n);
    for (Index j = 0; j < m; ++j) {
        const int l = rung.fwd_labels[static_cast<std::size_t>(j)];
        RowVec u = rung.back_e.at(l).apply(RowVec(rung.fwd_basis.row(j)));
        RowVec v = g.map.apply(u);
        RowVec w = rung.psi_k_ep.at(l).apply(v);
        images.row(j) = rung.fwd_ep.at(l).apply(w);
    }
    return {k + 1, from_marked_images(part(k + 1), part_prime(k + 1), rung.fwd_basis, images)};
}

BlockMap ReconstructionPlan::step_backward(const BlockMap& g) const {
    const Index k = g.k;
    if (k <= 0 || k >= block_count())
        throw SemanticError("reconstruction: backward step index out of range");
    const Rung& rung = rungs_[static_cast<std::size_t>(k - 1)];
    if (!(g.map.domain() == part(k)) || !(g.map.codomain() == part_prime(k)))
        throw SemanticError("reconstruction: block does not match the plan's parts");

    const Index m = rung.bwd_basis.rows();
    Mat images(m, cert_.n);
    for (Index j = 0; j < m; ++j) {
        const int l = rung.bwd_labels[static_cast<std::size_t>(j)];
        RowVec u = rung.fwd_e.at(l).apply(RowVec(rung.bwd_basis.row(j)));
        RowVec v = g.map.apply(u);
        RowVec w = rung.psi_k1_ep.at(l).apply(v);
        images.row(j) = rung.back_ep.at(l).apply(w);
    }
    return {k - 1, from_marked_images(part(k - 1), part_prime(k - 1), rung.bwd_basis, images)};
}

BlockMap ReconstructionPlan::transport(const BlockMap& g, Index r) const {
    if (r < 0 || r >= block_count())
        throw SemanticError("reconstruction: transport target out of range");
    BlockMap current = g;
    while (current.k < r) current = step_forward(current);
    while (current.k > r) current = step_backward(current);
    return current;
}

LinearMap ReconstructionPlan::assemble(const BlockMap& g) const {
    const Index n = cert_.n;
    const Index K = block_count();
    std::vector<BlockMap> blocks;
    blocks.reserve(static_cast<std::size_t>(K));
    for (Index r = 0; r < K; ++r) blocks.push_back(transport(g, r));

    Mat full = Mat::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        RowVec unit = RowVec::Unit(n, i);
        RowVec acc = RowVec::Zero(n);
        for (Index r = 0; r < K; ++r) {
            RowVec component = proj_e_[static_cast<std::size_t>(r)].apply(unit);
            acc += blocks[static_cast<std::size_t>(r)].map.apply(component);
        }
        full.row(i) = acc;
    }
    return LinearMap::on_ambient(n, std::move(full));
}

BlockMap ReconstructionPlan::block_of(const LinearMap& full_map, Index k) const {
    if (k < 0 || k >= block_count())
        throw SemanticError("reconstruction: block index out of range");
    const Subspace& from = part(k);
    const Subspace& to = part_prime(k);
    Mat action(from.dim(), to.dim());
    for (Index i = 0; i < from.dim(); ++i) {
        RowVec image = full_map.apply(RowVec(from.basis().row(i)));
        auto c = to.coords_of(image);
        if (!c)
            throw SemanticError("reconstruction: map is not block-diagonal at part " +
                                std::to_string(k + 1));
        action.row(i) = *c;
    }
    return {k, LinearMap(from, to, std::move(action))};
}

ConstrainedSample sample_constrained_map(const ReconstructionPlan& plan, std::uint64_t seed) {
    const Certificate& cert = plan.certificate();
    const Index n = cert.n;

    // Linear constraints on the n^2 unknown entries (row-major): for every
    // basis row b of a constrained source space S and every right-kernel
    // column z of the target space's basis, sum_{r,c} b_r z_c g_{rc} = 0.
    std::vector<std::pair<Subspace, Subspace>> pairs;
    for (Index k = 0; k < plan.block_count(); ++k)
        pairs.emplace_back(plan.part(k), plan.part_prime(k));
    for (const Expr& q : cert.q_exprs)
        pairs.emplace_back(q.evaluate(plan.system()), q.evaluate(plan.system_prime()));

    Index rows = 0;
    for (const auto& [src, dst] : pairs) rows += src.dim() * (n - dst.dim());
    Mat constraints = Mat::Zero(rows, n * n);
    Index at = 0;
    for (const auto& [src, dst] : pairs) {
        Mat z = right_kernel<GQ>(dst.basis());
        for (Index i = 0; i < src.dim(); ++i) {
            for (Index col = 0; col < z.cols(); ++col) {
                for (Index r = 0; r < n; ++r)
                    for (Index c = 0; c < n; ++c)
                        constraints(at, r * n + c) = src.basis()(i, r) * z(c, col);
                ++at;
            }
        }
    }

    Mat kernel = right_kernel<GQ>(constraints);
    const Index dim = kernel.cols();
    Mat g = Mat::Zero(n, n);
    if (dim > 0) {
        Rng rng = Rng(seed).derive("sample-constrained");
        for (int attempt = 0; attempt < 16; ++attempt) {
            Mat candidate = Mat::Zero(n, n);
            for (Index j = 0; j < dim; ++j) {
                GQ coeff(mpq_class(rng.uniform_int(-9, 9)), mpq_class(rng.uniform_int(-9, 9)));
                if (coeff.is_zero()) continue;
                for (Index r = 0; r < n; ++r)
                    for (Index c = 0; c < n; ++c)
                        candidate(r, c) += coeff * kernel(r * n + c, j);
            }
            bool zero = true;
            for (Index r = 0; r < n && zero; ++r)
                for (Index c = 0; c < n && zero; ++c)
                    if (!candidate(r, c).is_zero()) zero = false;
            if (!zero) {
                g = std::move(candidate);
                break;
            }
        }
    }
    return {LinearMap::on_ambient(n, std::move(g)), dim};
}

LinearMap phi(const ReconstructionPlan& plan, Index k, const LinearMap& block) {
    return plan.assemble(BlockMap{k, block});
}

}  // namespace charweb
