#include <doctest.h>

#include "charweb/reconstruct.hpp"
#include "charweb/errors.hpp"

using namespace charweb;

namespace {

Subspace line(std::initializer_list<long> v, Index n) {
    Mat m(1, n);
    Index j = 0;
    for (long x : v) m(0, j++) = GQ(x);
    return Subspace::from_spanning(n, m);
}

SubspaceSystem three_lines() {
    return SubspaceSystem(2, {line({1, 0}, 2), line({1, 1}, 2), line({0, 1}, 2)});
}

Mat scalar_matrix(Index n, long v) {
    Mat m = Mat::Zero(n, n);
    for (Index i = 0; i < n; ++i) m(i, i) = GQ(v);
    return m;
}

}  // namespace

TEST_SUITE("reconstruct") {

TEST_CASE("plan for the three-lines instance") {
    Certificate cert = cert_lines(2, 3, 1);
    SubspaceSystem e = three_lines();
    ReconstructionPlan plan = ReconstructionPlan::build(cert, e, e);
    CHECK(plan.block_count() == 2);
    // P_1 = E_3, P_2 = E_1
    CHECK(plan.part(0) == e.member(2));
    CHECK(plan.part(1) == e.member(0));

    // identity block reproduces the identity everywhere
    BlockMap id0{0, LinearMap::identity_on(plan.part(0))};
    BlockMap at1 = plan.step_forward(id0);
    CHECK(at1.map == LinearMap::identity_on(plan.part(1)));
    CHECK(mat_eq(plan.assemble(id0).ambient_matrix(), Mat(Mat::Identity(2, 2))));
}

TEST_CASE("homothety transports along the ladder") {
    Certificate cert = cert_lines(2, 3, 1);
    SubspaceSystem e = three_lines();
    ReconstructionPlan plan = ReconstructionPlan::build(cert, e, e);

    // g_1 = multiplication by 2 on P_1; a map of C^2 preserving three
    // distinct lines is a homothety, so the ladder must produce 2*id.
    BlockMap doubled{0, LinearMap::identity_on(plan.part(0)).scaled(GQ(2))};
    BlockMap g2 = plan.step_forward(doubled);
    CHECK(g2.map == LinearMap::identity_on(plan.part(1)).scaled(GQ(2)));
    CHECK(mat_eq(plan.assemble(doubled).ambient_matrix(), scalar_matrix(2, 2)));
    CHECK(mat_eq(phi(plan, 0, doubled.map).ambient_matrix(), scalar_matrix(2, 2)));
    CHECK(mat_eq(phi(plan, 1, g2.map).ambient_matrix(), scalar_matrix(2, 2)));
}

TEST_CASE("steps are linear in the block") {
    Certificate cert = cert_lines(3, 4, 1);
    SubspaceSystem e = random_system(3, {1, 1, 1, 1}, 71);
    SubspaceSystem f = random_system(3, {1, 1, 1, 1}, 72);
    ReconstructionPlan plan = ReconstructionPlan::build(cert, e, f);

    ConstrainedSample sample = sample_constrained_map(plan, 5);
    BlockMap b0 = plan.block_of(sample.map, 0);
    BlockMap scaled{0, b0.map.scaled(GQ::ratio(3, 2))};
    CHECK(plan.step_forward(scaled).map == plan.step_forward(b0).map.scaled(GQ::ratio(3, 2)));

    ConstrainedSample other = sample_constrained_map(plan, 6);
    BlockMap c0 = plan.block_of(other.map, 0);
    BlockMap sum0{0, b0.map.plus(c0.map)};
    CHECK(plan.step_forward(sum0).map ==
          plan.step_forward(b0).map.plus(plan.step_forward(c0).map));
}

TEST_CASE("round-trip: every block of a constrained map reconstructs it") {
    Rng seeds(2024);
    for (int trial = 0; trial < 6; ++trial) {
        Certificate cert = trial % 2 == 0 ? cert_lines(3, 4, 1) : cert_hyperplanes(3, 4, 1);
        std::uint64_t se = static_cast<std::uint64_t>(seeds.uniform_int(1, 1 << 30));
        std::uint64_t sf = static_cast<std::uint64_t>(seeds.uniform_int(1, 1 << 30));
        SubspaceSystem e = random_system(3, cert.dims, se);
        SubspaceSystem f = random_system(3, cert.dims, sf);
        ReconstructionPlan plan = ReconstructionPlan::build(cert, e, f);

        ConstrainedSample sample =
            sample_constrained_map(plan, static_cast<std::uint64_t>(trial) + 99);
        REQUIRE(sample.solution_dim >= 1);
        Mat expected = sample.map.ambient_matrix();
        for (Index k = 0; k < plan.block_count(); ++k) {
            BlockMap block = plan.block_of(sample.map, k);
            CHECK(mat_eq(plan.assemble(block).ambient_matrix(), expected));
        }
    }
}

TEST_CASE("reconstruction is linear in the block") {
    Certificate cert = cert_lines(3, 4, 1);
    SubspaceSystem e = random_system(3, cert.dims, 811);
    SubspaceSystem f = random_system(3, cert.dims, 812);
    ReconstructionPlan plan = ReconstructionPlan::build(cert, e, f);
    BlockMap a = plan.block_of(sample_constrained_map(plan, 1).map, 0);
    BlockMap b = plan.block_of(sample_constrained_map(plan, 2).map, 0);
    Mat lhs = plan.assemble(BlockMap{0, a.map.plus(b.map)}).ambient_matrix();
    Mat rhs = plan.assemble(a).ambient_matrix() + plan.assemble(b).ambient_matrix();
    CHECK(mat_eq(lhs, Mat(rhs)));
    Mat scaled = plan.assemble(BlockMap{0, a.map.scaled(GQ::ratio(-5, 3))}).ambient_matrix();
    Mat expected = plan.assemble(a).ambient_matrix();
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) expected(i, j) *= GQ::ratio(-5, 3);
    CHECK(mat_eq(scaled, expected));
}

TEST_CASE("chains compose consistently") {
    Certificate cert = cert_lines(4, 5, 1);  // K = 4 gives longer ladders
    SubspaceSystem e = random_system(4, cert.dims, 301);
    SubspaceSystem f = random_system(4, cert.dims, 302);
    ReconstructionPlan plan = ReconstructionPlan::build(cert, e, f);
    ConstrainedSample sample = sample_constrained_map(plan, 17);
    BlockMap b0 = plan.block_of(sample.map, 0);

    BlockMap direct = plan.transport(b0, 3);
    BlockMap mid = plan.transport(b0, 2);
    BlockMap via = plan.transport(mid, 3);
    CHECK(direct.map == via.map);
    // and back down again
    CHECK(plan.transport(direct, 0).map == b0.map);
}

TEST_CASE("solution space of the three-lines constraints is the homotheties") {
    Certificate cert = cert_lines(2, 3, 1);
    SubspaceSystem e = three_lines();
    ReconstructionPlan plan = ReconstructionPlan::build(cert, e, e);
    ConstrainedSample sample = sample_constrained_map(plan, 8);
    CHECK(sample.solution_dim == 1);
    Mat m = sample.map.ambient_matrix();
    CHECK(m(0, 1).is_zero());
    CHECK(m(1, 0).is_zero());
    CHECK(m(0, 0) == m(1, 1));
    CHECK(!m(0, 0).is_zero());

    // two distinct generic line triples still give a one-parameter family
    SubspaceSystem f = random_system(2, {1, 1, 1}, 404);
    ReconstructionPlan cross = ReconstructionPlan::build(cert, e, f);
    CHECK(sample_constrained_map(cross, 9).solution_dim == 1);
}

TEST_CASE("the zero map always satisfies the constraints") {
    Certificate cert = cert_lines(2, 3, 1);
    SubspaceSystem e = three_lines();
    ReconstructionPlan plan = ReconstructionPlan::build(cert, e, e);
    LinearMap zero = LinearMap::on_ambient(2, Mat::Zero(2, 2));
    for (Index k = 0; k < plan.block_count(); ++k) {
        BlockMap b = plan.block_of(zero, k);  // extraction succeeds
        CHECK(mat_eq(plan.assemble(b).ambient_matrix(), Mat(Mat::Zero(2, 2))));
    }
}

TEST_CASE("degenerate systems are rejected while building the plan") {
    Certificate cert = cert_lines(2, 3, 1);
    SubspaceSystem e = three_lines();
    SubspaceSystem bad(2, {line({1, 0}, 2), line({1, 0}, 2), line({0, 1}, 2)});
    CHECK_THROWS_AS(ReconstructionPlan::build(cert, e, bad), DegeneracyError);
    CHECK_THROWS_AS(ReconstructionPlan::build(cert, bad, e), DegeneracyError);
}

TEST_CASE("non-block-diagonal maps cannot be sliced") {
    Certificate cert = cert_lines(2, 3, 1);
    SubspaceSystem e = three_lines();
    ReconstructionPlan plan = ReconstructionPlan::build(cert, e, e);
    Mat rot = Mat::Zero(2, 2);
    rot(0, 1) = GQ(1);
    rot(1, 0) = GQ(-1);
    LinearMap r = LinearMap::on_ambient(2, rot);
    CHECK_THROWS_AS(plan.block_of(r, 0), SemanticError);
}

}  // TEST_SUITE
