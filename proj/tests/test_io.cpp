#include "mixfrob/errors.hpp"
#include "mixfrob/io.hpp"

#include <doctest.h>

using namespace mixfrob;

TEST_CASE("rationals and matrices in JSON") {
    CHECK(to_json(frac(-3, 6)) == "-1/2");
    CHECK(rat_from_json(json("4/6")) == frac(2, 3));
    CHECK(rat_from_json(json(5)) == 5);
    CHECK_THROWS_AS(rat_from_json(json(1.5)), ParseError);
    QMat m{{Rat(1), frac(1, 2)}, {Rat(0), Rat(-1)}};
    CHECK(to_json(m).dump() == R"([["1","1/2"],["0","-1"]])");
    CHECK(qmat_from_json(to_json(m)) == m);
    CHECK_THROWS_AS(qmat_from_json(json::parse(R"([["1"],["1","2"]])")), ParseError);
}

TEST_CASE("jets in JSON") {
    auto sp = JetSpace::get(2, 0, 2, 0);
    Jet j = Jet::constant(sp, Rat(1)) + Jet::variable(sp, 1) * frac(1, 3);
    CHECK(jet_from_json(sp, to_json(j)) == j);
    CHECK(to_json(Jet::constant(sp, Rat(2))) == "2");
    JMat a = JMat::column({j, Jet::variable(sp, 0)});
    CHECK(jmat_from_json(sp, to_json(a)) == a);
}

TEST_CASE("trTLEP input roundtrip") {
    auto in = trtlep_from_json(json::parse(R"({"rank": 1, "nt": 1, "D": 3, "C": [[["-1"]]],
        "U": [[{"1": "1"}]], "V": [["1"]], "weight": 2, "g": {"2": [["1"]]}, "zeta": ["1"], "d": 2})"));
    CHECK(check_mixed_trtlep(in.T).ok());
    REQUIRE(in.zeta);
    CHECK(*in.d == 2);
    auto again = trtlep_from_json(to_json(in.T));
    CHECK(again.T.F.U == in.T.F.U);
    CHECK(again.T.F.C[0] == in.T.F.C[0]);
    CHECK(again.T.W == in.T.W);
    CHECK(again.T.g == in.T.g);
    CHECK_THROWS_AS(trtlep_from_json(json::parse(R"({"rank": 2, "V": [["1"]]})")), ParseError);
    CHECK_THROWS_AS(parse_json_text("{"), ParseError);
}

TEST_CASE("certificate JSON") {
    Certificate c;
    c.add("a", true);
    c.add("b", false, "entry (0,0)");
    json j = to_json(c);
    CHECK(j["ok"] == false);
    CHECK(j["failed"] == 1);
    CHECK(j["checks"][1]["detail"] == "entry (0,0)");
}
