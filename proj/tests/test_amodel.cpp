#include "mixfrob/acceptance.hpp"
#include "mixfrob/amodel.hpp"
#include "mixfrob/errors.hpp"

#include <doctest.h>

using namespace mixfrob;

TEST_CASE("toric surface intersections") {
    auto s = surface_intersections(surface_p2());
    CHECK(s.c1_squared == 9);
    for (const auto& x : s.self) CHECK(x == 1);
    auto q = surface_intersections(surface_p1xp1());
    CHECK(q.c1_squared == 8);

    ToricSurface sing;
    sing.rays = {{1, 0}, {0, 1}, {-1, -2}};
    CHECK_THROWS_AS(surface_intersections(sing), NotSmoothFan);
    // F_3 has a (-3)-curve
    ToricSurface f3;
    f3.rays = {{1, 0}, {0, 1}, {-1, 3}, {0, -1}};
    f3.nef = {{Rat(1), Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0), Rat(0)}};
    CHECK_THROWS_AS(surface_intersections(f3), NotWeakFano);
}

TEST_CASE("cohomology of the local model") {
    auto h = build_cohomology(surface_p2());
    CHECK(h.size() == 6);
    CHECK(h.names[0] == "G0");
    CHECK(det(h.pairing) != 0);
    CHECK(h.pairing == h.pairing.transpose());
    // Δ_0 ∪ Γ_0 = Δ_0
    CHECK(h.cup[h.delta(0)] * unit_vector(6, h.gamma(0)) == unit_vector(6, h.delta(0)));
}

TEST_CASE("small quantum connection and limit for P2") {
    auto sq = small_quantum_connection(surface_p2(), mock_gw_p2(3), {frac(1, 10)}, 3);
    CHECK(sq.cert.ok());
    CHECK(check_mixed_trtlep(sq.T).ok());
    CHECK_THROWS_AS(small_quantum_connection(surface_p2(), mock_gw_p2(2), {frac(1, 10)}, 3), CutoffTooSmall);
    auto lim = limit_and_twist(sq);
    CHECK(lim.cert.ok());
    QMat v = lim.T.F.V.constant_part();
    REQUIRE(v.rows() == 3);
    CHECK(v(0, 0) == 2);
    CHECK(v(1, 1) == 1);
    CHECK(v(2, 2) == 0);
}

TEST_CASE("local A-model pipeline: charge 4 with unit Gamma_0") {
    auto p = local_a_pipeline(surface_p2(), mock_gw_p2(3), {frac(1, 10)}, 3, 3);
    CHECK(p.cert.ok());
    CHECK(p.charge == 4);
    CHECK(p.conditions.IC);
    CHECK(p.conditions.GC);
    CHECK(p.conditions.EC);
    CHECK(p.mfs.M.n == 3);
    CHECK(check_mfs(p.mfs.M).ok());
}

TEST_CASE("fan and GW parsers") {
    auto s = parse_fan("ray 1 0\n0 1\n-1 -1 # third\n");
    CHECK(s.rays.size() == 3);
    CHECK(s.nef.size() == 1);
    CHECK_THROWS_AS(parse_fan("1 0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_fan("1 0\n0 1\n-1 -1\nnef 1 0\n"), ParseError);
    auto g = parse_gw("1 : 3\n2 : -45/8\n", 1, 3);
    CHECK(g.N.at({2}) == frac(-45, 8));
    CHECK_THROWS_AS(parse_gw("1 1 : 3\n", 1, 3), ParseError);
    CHECK_THROWS_AS(parse_gw("1 3\n", 1, 3), ParseError);
}
