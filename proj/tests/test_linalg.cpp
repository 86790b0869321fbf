#include "mixfrob/errors.hpp"
#include "mixfrob/gauge.hpp"
#include "mixfrob/subspace.hpp"

#include <doctest.h>

#include <random>

using namespace mixfrob;

TEST_CASE("rationals parse and print canonically") {
    CHECK(parse_rat("6/4") == frac(3, 2));
    CHECK(to_string(parse_rat("-6/4")) == "-3/2");
    CHECK(to_string(parse_rat("+7")) == "7");
    CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rat("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rat("1/-2"), ParseError);
}

TEST_CASE("solve_linear: identity, inconsistent, y-dependent") {
    auto sp = JetSpace::get(1, 1, 2, 2);
    Jet t = Jet::variable(sp, 0), y = Jet::variable(sp, 1), one = Jet::constant(sp, Rat(1));

    auto r = solve_linear(JMat::identity(sp, 2), JMat::column({one, t}));
    CHECK(r.x == JMat::column({one, t}));

    JMat a = JMat::constant(sp, QMat{{Rat(1), Rat(1)}, {Rat(0), Rat(0)}});
    CHECK_THROWS_AS(solve_linear(a, JMat::column({one, one})), NoSolution);

    JMat b(sp, 2, 2);
    b(0, 0) = one;
    b(0, 1) = y;
    b(1, 1) = one;
    auto s = solve_linear(b, JMat::column({t, one}));
    CHECK(s.x == JMat::column({t - y, one}));
}

TEST_CASE("subspace calculus") {
    QMat n{{Rat(0), Rat(1)}, {Rat(0), Rat(0)}};
    CHECK(kernel(n) == QSubspace::span(2, {{Rat(1), Rat(0)}}));
    CHECK(image(n) == QSubspace::span(2, {{Rat(1), Rat(0)}}));
    auto q = quotient(QSubspace::span(2, {{Rat(1), Rat(0)}}));
    REQUIRE(q.representatives.size() == 1);
    CHECK(q.representatives[0] == QVec{Rat(0), Rat(1)});
    CHECK(q.projection * q.section() == QMat::identity(1));
    CHECK(q.projection * QVec{Rat(5), Rat(-2)} == QVec{Rat(-2)});

    auto a = QSubspace::span(3, {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}});
    auto b = QSubspace::span(3, {{Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}});
    CHECK(intersection(a, b).dim() == 1);
    CHECK(sum(a, b).dim() == 3);
}

TEST_CASE("jet ring axioms on random inputs") {
    auto sp = JetSpace::get(2, 1, 3, 2);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> c(-4, 4);
    auto rnd = [&] {
        Jet j(sp);
        for (std::size_t i = 0; i < sp->size(); ++i) j[i] = frac(c(rng), 1 + (c(rng) + 4) % 3);
        return j;
    };
    for (int k = 0; k < 10; ++k) {
        Jet a = rnd(), b = rnd(), d = rnd();
        CHECK((a * b) * d == a * (b * d));
        CHECK(a * (b + d) == a * b + a * d);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("flat_gauge") {
    auto sp = JetSpace::get(2, 0, 4, 0);
    JMat zero = JMat::constant(sp, QMat(2, 2));
    CHECK(flat_gauge({zero, zero}) == JMat::identity(sp, 2));

    // constant A: g = exp(-M t) solves dg + A g = 0
    auto sp1 = JetSpace::get(1, 0, 4, 0);
    QMat m{{Rat(1), Rat(2)}, {Rat(0), Rat(-1)}};
    JMat a = JMat::constant(sp1, m);
    JMat g = flat_gauge({a});
    CHECK(zero_within(g.derivative(0) + a * g, {0}));
    CHECK(g.constant_part() == QMat::identity(2));

    JMat a1 = JMat::constant(sp, QMat{{Rat(0), Rat(1)}, {Rat(0), Rat(0)}});
    JMat a2 = JMat::constant(sp, QMat{{Rat(0), Rat(0)}, {Rat(1), Rat(0)}});
    CHECK_THROWS_AS(flat_gauge({a1, a2}), NotFlat);
}

TEST_CASE("jet term cap") {
    setenv("MIXFROB_MAX_JET_TERMS", "10", 1);
    CHECK_THROWS_AS(JetSpace::get(3, 2, 9, 9), ResourceLimit);
    unsetenv("MIXFROB_MAX_JET_TERMS");
}
