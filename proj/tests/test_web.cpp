#include <doctest.h>

#include "charweb/web.hpp"
#include "charweb/errors.hpp"

using namespace charweb;

namespace {

RowVec pt(std::initializer_list<long> v) {
    RowVec z(static_cast<Index>(v.size()));
    Index j = 0;
    for (long x : v) z(j++) = GQ(x);
    return z;
}

// (z1, z2, z1*z2) on C^2
PolyhedralPresentation standard_presentation() {
    Poly z1 = Poly::variable(2, 0);
    Poly z2 = Poly::variable(2, 1);
    PolyhedralPresentation pres;
    pres.n = 2;
    pres.defs.push_back(PolyMap(2, {z1}));
    pres.defs.push_back(PolyMap(2, {z2}));
    pres.defs.push_back(PolyMap(2, {z1 * z2}));
    return pres;
}

}  // namespace

TEST_SUITE("web") {

TEST_CASE("polynomial arithmetic and evaluation are exact") {
    Poly z1 = Poly::variable(2, 0);
    Poly z2 = Poly::variable(2, 1);
    Poly p = z1 * z2 + Poly::constant(2, GQ::ratio(1, 2));
    CHECK(p.eval(pt({3, 4})) == GQ(12) + GQ::ratio(1, 2));
    // cancellation drops terms
    Poly q = p + Poly::constant(2, GQ::ratio(-1, 2));
    CHECK(q == z1 * z2);
}

TEST_CASE("derivatives follow the product rule") {
    Poly z1 = Poly::variable(2, 0);
    Poly z2 = Poly::variable(2, 1);
    Poly p = z1 * z2;
    CHECK(p.derivative(0) == z2);
    CHECK(p.derivative(1) == z1);

    // p = z^2 in one variable: dp = 2z
    Poly z = Poly::variable(1, 0);
    Poly sq = z * z;
    CHECK(sq.derivative(0) == z + z);

    // constants vanish
    CHECK(Poly::constant(2, GQ(7)).derivative(0).is_zero());
}

TEST_CASE("jacobian of the identity is the identity") {
    PolyMap id(3, {Poly::variable(3, 0), Poly::variable(3, 1), Poly::variable(3, 2)});
    CHECK(mat_eq(id.jacobian_at(pt({5, -2, 9})), Mat(Mat::Identity(3, 3))));
}

TEST_CASE("symbolic jacobian agrees with the shift-expansion oracle") {
    // The coefficient of t in p(z + t e_j), expanded symbolically, equals
    // the j-th partial derivative at z.
    Rng rng(37);
    for (int trial = 0; trial < 8; ++trial) {
        const Index n = 2;
        Poly p(n);
        for (int t = 0; t < 5; ++t) {
            std::vector<int> exps{static_cast<int>(rng.uniform_int(0, 3)),
                                  static_cast<int>(rng.uniform_int(0, 3))};
            p.add_term(GQ(rng.uniform_int(-4, 4)), exps);
        }
        RowVec z = pt({rng.uniform_int(-5, 5), rng.uniform_int(-5, 5)});
        for (Index j = 0; j < n; ++j) {
            // expand p(z + t e_j) as a polynomial in the single variable t
            Poly in_t(1);
            for (const Term& term : p.terms()) {
                Poly factor = Poly::constant(1, term.coeff);
                for (Index v = 0; v < n; ++v) {
                    Poly linear = v == j
                                      ? Poly::constant(1, z(v)) + Poly::variable(1, 0)
                                      : Poly::constant(1, z(v));
                    for (int e = 0; e < term.exps[static_cast<std::size_t>(v)]; ++e)
                        factor = factor * linear;
                }
                in_t = in_t + factor;
            }
            GQ linear_coeff(0);
            for (const Term& term : in_t.terms())
                if (term.exps[0] == 1) linear_coeff = term.coeff;
            CHECK(linear_coeff == p.derivative(j).eval(z));
        }
    }
}

TEST_CASE("tangent system of the standard presentation at (1,1)") {
    PolyhedralPresentation pres = standard_presentation();
    SubspaceSystem t = tangent_system(pres, pt({1, 1}));
    REQUIRE(t.size() == 3);
    // gradients (1,0), (0,1), (1,1) -> kernels span(0,1), span(1,0), span(1,-1)
    CHECK(t.dims() == std::vector<Index>{1, 1, 1});
    CHECK(t.member(0).contains(pt({0, 1})));
    CHECK(t.member(1).contains(pt({1, 0})));
    CHECK(t.member(2).contains(pt({1, -1})));
    // three distinct lines
    CHECK(!(t.member(0) == t.member(1)));
    CHECK(!(t.member(1) == t.member(2)));
    CHECK(!(t.member(0) == t.member(2)));
    // dims match n - rank at every accepted point
    for (Index i = 0; i < 3; ++i) {
        Index rank = rank_of<GQ>(pres.defs[static_cast<std::size_t>(i)].jacobian_at(pt({1, 1})));
        CHECK(t.member(i).dim() == 2 - rank);
    }
}

TEST_CASE("singular point raises the named error") {
    PolyhedralPresentation pres = standard_presentation();
    CHECK_THROWS_WITH_AS(static_cast<void>(tangent_system(pres, pt({0, 0}))),
                         doctest::Contains("map 3"), DegeneracyError);
}

TEST_CASE("identity defining map gives the zero tangent") {
    PolyhedralPresentation pres;
    pres.n = 2;
    pres.defs.push_back(PolyMap(2, {Poly::variable(2, 0), Poly::variable(2, 1)}));
    SubspaceSystem t = tangent_system(pres, pt({4, 7}));
    CHECK(t.member(0).dim() == 0);
}

TEST_CASE("web report at a regular point") {
    PolyhedralPresentation pres = standard_presentation();
    WebReport r = web_report(pres, pt({1, 1}));
    CHECK(r.dims == std::vector<Index>{1, 1, 1});
    CHECK(r.genpos.in_general_position);
    CHECK(r.s == 3);
    CHECK(r.bound == 6);
    CHECK(!r.rigid_by_count);
    REQUIRE(r.rigid_small_tuple.has_value());
    CHECK(*r.rigid_small_tuple);
    CHECK(r.rigid);
    CHECK(r.containment_pairs.empty());

    // the same report's verdict is exactly the genpos module's verdict
    SubspaceSystem t = tangent_system(pres, pt({1, 1}));
    CHECK(r.genpos.in_general_position ==
          system_in_general_position(t).in_general_position);
}

TEST_CASE("web report with too few decompositions is not flagged rigid") {
    PolyhedralPresentation pres;
    pres.n = 2;
    pres.defs.push_back(PolyMap(2, {Poly::variable(2, 0)}));
    pres.defs.push_back(PolyMap(2, {Poly::variable(2, 1)}));
    WebReport r = web_report(pres, pt({1, 1}));
    CHECK(r.dims == std::vector<Index>{1, 1});
    REQUIRE(r.rigid_small_tuple.has_value());
    CHECK(!*r.rigid_small_tuple);  // s = 2 < n + 1 = 3
    CHECK(!r.rigid);
}

TEST_CASE("web report at a different point keeps general position") {
    PolyhedralPresentation pres = standard_presentation();
    WebReport r = web_report(pres, pt({1, -1}));
    // gradients (1,0), (0,1), (-1,1): kernels distinct again
    CHECK(r.genpos.in_general_position);
}

TEST_CASE("containment pairs detect refined decompositions") {
    // g1 = (z1, z2) has zero-dimensional kernels; g2 = z1 has kernel
    // span(0,1) everywhere: ker dg1 <= ker dg2 at every point.
    PolyhedralPresentation pres;
    pres.n = 2;
    pres.defs.push_back(PolyMap(2, {Poly::variable(2, 0), Poly::variable(2, 1)}));
    pres.defs.push_back(PolyMap(2, {Poly::variable(2, 0)}));
    WebReport r = web_report(pres, pt({1, 1}));
    bool found = false;
    for (auto [i, j] : r.containment_pairs)
        if (i == 1 && j == 2) found = true;
    CHECK(found);
}

}  // TEST_SUITE
