#include "mixfrob/errors.hpp"
#include "mixfrob/limit_mhs.hpp"
#include "mixfrob/unfolding.hpp"

#include <doctest.h>

using namespace mixfrob;

namespace {

MixedTrTLEP point_rank1(int D) {
    auto sp = JetSpace::get(0, 0, D, 0);
    MixedTrTLEP t;
    t.F = FrobType::zero(sp, 1);
    t.F.V = JMat::constant(sp, QMat{{Rat(2)}});
    t.W = Flag::trivial(1, 4);
    t.g[4] = QMat{{Rat(1)}};
    return t;
}

// [V,N] = -N and V^T g + g V = 0 for the antidiagonal g
QMat half() { return QMat{{frac(-1, 2), Rat(0)}, {Rat(0), frac(1, 2)}}; }

QMat n2() { return QMat{{Rat(0), Rat(1)}, {Rat(0), Rat(0)}}; }

MixedTrTLEP limit_input(const QMat& v) {
    auto sp = JetSpace::get(0, 0, 2, 0);
    MixedTrTLEP t;
    t.F = FrobType::zero(sp, 2);
    t.F.V = JMat::constant(sp, v);
    t.W = Flag::trivial(2, 0);
    t.g[0] = QMat{{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    return t;
}

}  // namespace

TEST_CASE("potential") {
    auto sp = JetSpace::get(2, 0, 3, 0);
    auto f = FrobType::zero(sp, 2);
    for (const auto& p : potential(f, {Rat(1), Rat(0)})) CHECK(p.is_zero());
    QMat a{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}}, b{{Rat(0), Rat(0)}, {Rat(2), Rat(0)}};
    f.C[0] = JMat::constant(sp, a);
    f.C[1] = JMat::constant(sp, b);
    auto psi = potential(f, {Rat(1), Rat(0)});
    Jet t1 = Jet::variable(sp, 0), t2 = Jet::variable(sp, 1);
    CHECK(psi[0].is_zero());
    CHECK(psi[1] == t1 + t2 * Rat(2));
}

TEST_CASE("monomial frame") {
    QMat c{{Rat(0), Rat(0), Rat(0)}, {Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}};
    auto fr = monomial_frame({c}, QMat(3, 3), {Rat(1), Rat(0), Rat(0)});
    REQUIRE(fr.words.size() == 3);
    CHECK(fr.words[2] == Word{0, 0});
    // C nilpotent on ζ; U completes the span
    QMat u{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}};
    auto fu = monomial_frame({QMat(2, 2)}, u, {Rat(1), Rat(0)});
    REQUIRE(fu.words.size() == 2);
    CHECK(fu.words[1] == Word{1});
    CHECK_THROWS_AS(monomial_frame({QMat(2, 2)}, QMat(2, 2), {Rat(1), Rat(0)}), GCFails);
}

TEST_CASE("unfolding a rank-one point") {
    auto t = point_rank1(4);
    auto sp = JetSpace::get(0, 1, 4, 4);
    auto r = unfold(t, {Rat(1)}, {Jet::variable(sp, 0)});
    CHECK(r.cert.ok());
    CHECK(r.T.F.C[0] == JMat::identity(sp, 1));
    CHECK(r.T.F.U == JMat::identity(sp, 1).scaled(-Jet::variable(sp, 0)));
    CHECK(r.T.F.V.constant_part() == QMat{{Rat(2)}});

    auto u = universal_unfold(t, {Rat(1)}, 4);
    CHECK(u.cert.ok());
    CHECK(u.directions.size() == 1);
    auto pe = extend_pairings(u, t.g);
    CHECK(pe.cert.ok());
    auto m = extract_mfs(u, {Rat(1)}, Rat(4), pe.g);
    CHECK(m.cert.ok());
    CHECK(check_mfs(m.M).ok());
}

TEST_CASE("unfolding is deterministic and restricts to the input") {
    auto t = point_rank1(3);
    auto a = universal_unfold(t, {Rat(1)}, 3);
    auto b = universal_unfold(t, {Rat(1)}, 3);
    CHECK(a.T.F.U == b.T.F.U);
    CHECK(a.T.F.C[0] == b.T.F.C[0]);
    CHECK(a.T.F.V.at_zero(0).constant_part() == t.F.V.constant_part());
}

TEST_CASE("unfolding needs N <= D") {
    auto t = point_rank1(2);
    CHECK_THROWS(universal_unfold(t, {Rat(1)}, 3));
}

TEST_CASE("nilpotent compatibility") {
    auto ok = limit_input(half());
    CHECK(check_nilpotent_compat(ok, n2()).ok());
    CHECK(check_nilpotent_compat(ok, QMat(2, 2)).ok());
    auto bad = limit_input(QMat::identity(2));
    CHECK_FALSE(check_nilpotent_compat(bad, n2()).ok());
    CHECK(nilpotency_index(n2()) == 2);
    CHECK_THROWS(nilpotency_index(QMat::identity(2)));
}

TEST_CASE("limit on the cokernel") {
    auto t = limit_input(half());
    auto zero = limit_mixed(t, QMat(2, 2));
    CHECK(zero.cert.ok());
    CHECK(zero.graded_dims.at(0) == 2);

    auto r = limit_mixed(t, n2());
    CHECK(r.cert.ok());
    REQUIRE(r.G.representatives.size() == 1);
    CHECK(r.G.representatives[0] == QVec{Rat(0), Rat(1)});
    CHECK(r.graded_dims.at(1) == 1);
    CHECK(r.T.g.at(1) == QMat{{Rat(1)}});
}

TEST_CASE("limit of a Jordan block of size 3") {
    auto sp = JetSpace::get(0, 0, 2, 0);
    MixedTrTLEP t;
    t.F = FrobType::zero(sp, 3);
    t.F.V = JMat::constant(sp, QMat{{Rat(-1), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(0)}, {Rat(0), Rat(0), Rat(1)}});
    t.W = Flag::trivial(3, 0);
    t.g[0] = QMat{{Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(0)}, {Rat(1), Rat(0), Rat(0)}};
    QMat n{{Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}, {Rat(0), Rat(0), Rat(0)}};
    auto r = limit_mixed(t, n);
    CHECK(r.cert.ok());
    std::size_t g0 = r.graded_dims.count(0) ? r.graded_dims.at(0) : 0;
    std::size_t g1 = r.graded_dims.count(1) ? r.graded_dims.at(1) : 0;
    CHECK(g0 == 0);
    CHECK(g1 == 0);
    CHECK(r.graded_dims.at(2) == 1);
}
