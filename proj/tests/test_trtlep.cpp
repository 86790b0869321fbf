#include "mixfrob/errors.hpp"
#include "mixfrob/trtlep.hpp"

#include <doctest.h>

using namespace mixfrob;

namespace {

QMat q1(const Rat& x) { return QMat{{x}}; }

MixedTrTLEP rank1(int w, const Rat& v, SpacePtr sp = JetSpace::get(0, 0, 4, 0)) {
    MixedTrTLEP t;
    t.F = FrobType::zero(sp, 1);
    t.F.V = JMat::constant(sp, q1(v));
    t.W = Flag::trivial(1, 2 * w);
    t.g[2 * w] = q1(Rat(1));
    return t;
}

SaitoMFS line_mfs(int d) {
    auto sp = JetSpace::get(1, 0, 4, 0);
    SaitoMFS m;
    m.sp = sp;
    m.n = 1;
    m.mult = {JMat::identity(sp, 1)};
    m.e = {Jet::constant(sp, Rat(1))};
    m.E = {Jet::variable(sp, 0)};
    m.I = Flag::trivial(1, d);
    m.g[d] = JMat::identity(sp, 1);
    m.d = d;
    return m;
}

}  // namespace

TEST_CASE("Frobenius type relations") {
    auto sp = JetSpace::get(1, 0, 3, 0);
    CHECK(check_frob_type(FrobType::zero(sp, 2)).ok());
    QMat m{{Rat(1), Rat(2)}, {Rat(0), Rat(1)}};
    auto f = FrobType::zero(sp, 2);
    f.C[0] = JMat::constant(sp, m);
    f.U = JMat::constant(sp, m).scaled(-Jet::variable(sp, 0));
    CHECK(check_frob_type(f).ok());
    CHECK(check_connection_curvature(f).ok());
    f.U = -f.U;
    CHECK_FALSE(check_frob_type(f).ok());
    CHECK_FALSE(check_connection_curvature(f).ok());
}

TEST_CASE("mixed trTLEP axioms") {
    CHECK(check_mixed_trtlep(rank1(2, Rat(2))).ok());
    CHECK_FALSE(check_mixed_trtlep(rank1(2, Rat(3))).ok());

    // U mixes weight 0 into the complement of W_0
    auto sp = JetSpace::get(0, 0, 2, 0);
    MixedTrTLEP t;
    t.F = FrobType::zero(sp, 2);
    t.F.V = JMat::constant(sp, QMat{{Rat(0), Rat(0)}, {Rat(0), Rat(1)}});
    t.F.U = JMat::constant(sp, QMat{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
    t.W = Flag(2, {{0, QSubspace::span(2, {{Rat(1), Rat(0)}})}, {2, QSubspace::full(2)}});
    t.g[0] = q1(Rat(1));
    t.g[2] = q1(Rat(1));
    CHECK_FALSE(check_mixed_trtlep(t).ok());
    t.F.U = JMat::constant(sp, QMat(2, 2));
    CHECK(check_mixed_trtlep(t).ok());
}

TEST_CASE("Tate twist") {
    auto t = rank1(2, Rat(2));
    auto same = tate_twist(t, Rat(0));
    CHECK(same.W == t.W);
    CHECK(same.F.V == t.F.V);
    auto tw = tate_twist(t, frac(-1, 2));
    CHECK(tw.F.V.constant_part() == q1(frac(3, 2)));
    CHECK(tw.g.count(3) == 1);
    CHECK(check_mixed_trtlep(tw).ok());
    auto back = tate_twist(tate_twist(t, frac(1, 2)), frac(-1, 2));
    CHECK(back.W == t.W);
    CHECK(back.g == t.g);
    CHECK(back.F.V == t.F.V);
    auto sc = section_conditions(t.F, {Rat(1)}, Rat(4));
    auto st = section_conditions(tw.F, {Rat(1)}, Rat(3));
    CHECK(sc.EC == st.EC);
}

TEST_CASE("section conditions") {
    auto t = rank1(2, Rat(2));
    auto sc = section_conditions(t.F, {Rat(1)}, Rat(4));
    CHECK(sc.GC);
    CHECK(sc.EC);
    CHECK(sc.IC);
    CHECK_FALSE(sc.IdC);

    auto sp = JetSpace::get(1, 0, 2, 0);
    auto f = FrobType::zero(sp, 2);
    CHECK_FALSE(section_conditions(f, {Rat(1), Rat(0)}, Rat(0)).GC);
    f.U = JMat::constant(sp, QMat{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
    CHECK(section_conditions(f, {Rat(1), Rat(0)}, Rat(0)).GC);
}

TEST_CASE("Rees construction, rank one") {
    auto sp = JetSpace::get(0, 0, 3, 0);
    Flag w = Flag::trivial(1, 2);
    JetFiltration F;
    F[1] = JMat::identity(sp, 1);
    Flag u = Flag::trivial(1, 1);
    auto r = rees_construct(w, F, u, {{2, q1(Rat(1))}});
    CHECK(r.cert.ok());
    CHECK(r.T.F.V.constant_part() == q1(Rat(1)));
    CHECK(section_conditions(r.T.F, {Rat(1)}, Rat(2)).EC);
}

TEST_CASE("opposite filtrations") {
    // weight 1, F^1 a line, U_0 a transverse isotropic line, S antisymmetric
    DecFiltration f0;
    f0[1] = QSubspace::span(2, {{Rat(1), Rat(0)}});
    f0[0] = QSubspace::full(2);
    Flag w = Flag::trivial(2, 1);
    QMat s{{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}};
    Flag u(2, {{0, QSubspace::span(2, {{Rat(0), Rat(1)}})}, {1, QSubspace::full(2)}});
    CHECK(check_opposite(f0, w, u, {{1, s}}).ok());
    Flag bad(2, {{0, QSubspace::span(2, {{Rat(1), Rat(0)}})}, {1, QSubspace::full(2)}});
    CHECK_FALSE(check_opposite(f0, w, bad, {{1, s}}).ok());
}

TEST_CASE("Saito structures") {
    auto m = line_mfs(2);
    CHECK(check_mfs(m).ok());
    auto t = mfs_to_mixed(m);
    CHECK(t.F.C[0].constant_part() == q1(Rat(-1)));
    CHECK(t.F.U == JMat::constant(m.sp, q1(Rat(1))).scaled(Jet::variable(m.sp, 0)));
    CHECK(t.F.V.constant_part() == q1(Rat(1)));
    CHECK(check_mixed_trtlep(t).ok());
    CHECK(mfs_to_mixed(line_mfs(4)).F.V.constant_part() == q1(Rat(2)));

    auto broken = line_mfs(2);
    broken.g[2] = JMat::identity(broken.sp, 1).scaled(Jet::variable(broken.sp, 0) + Jet::constant(broken.sp, Rat(1)));
    CHECK_FALSE(check_mfs(broken).ok());
}

TEST_CASE("Saito roundtrip") {
    auto m = line_mfs(2);
    auto t = mfs_to_mixed(m);
    auto r = roundtrip_saito(t, {Rat(1)}, Rat(2));
    CHECK(r.cert.ok());
    CHECK(check_mfs(r.M).ok());
    CHECK_THROWS_AS(roundtrip_saito(rank1(1, Rat(1)), {Rat(1)}, Rat(2)), ConditionsNotMet);
}
