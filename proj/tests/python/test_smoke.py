from pathlib import Path

import pytest

import mixfrob

DATA = Path(__file__).resolve().parents[2] / "data"


def read(name):
    return (DATA / name).read_text()


def test_polytope_p2():
    rep, ok = mixfrob.polytope_check(read("p2.poly"), 2)
    assert ok
    assert rep["lattice_points"] == [1, 4, 10]
    assert rep["reflexive"]


def test_malformed_polytope():
    with pytest.raises(mixfrob.ParseError):
        mixfrob.polytope_check("2\n1 x\n")


def test_jacobian_ring_dims():
    rep, ok = mixfrob.bmodel("ring", read("p2_mirror.laurent"))
    assert ok
    assert rep["dims"] == [1, 1, 1, 0]


def test_singular_member_is_not_regular():
    rep, ok = mixfrob.bmodel("regular", read("p2_singular.laurent"))
    assert not ok
    assert rep["regular"] is False


def test_rank_one_unfolding():
    rep, ok = mixfrob.unfold_universal(read("rank1.json"), 4)
    assert ok
    assert len(rep["directions"]) == 1
    assert rep["mfs"]["d"] == "4"


def test_tate_twist_dict_input():
    s = {"rank": 1, "D": 2, "V": [["2"]], "weight": 4, "g": {"4": [["1"]]}}
    rep, ok = mixfrob.trtlep("twist", s, "-1/2")
    assert ok
    assert rep["structure"]["V"] == [["3/2"]]


def test_limit():
    rep, ok = mixfrob.limit_run(read("limit_jordan.json"))
    assert ok
    assert rep["graded_dims"] == {"1": 1}


def test_amodel_charge_four():
    rep, ok = mixfrob.amodel_pipeline(read("p2.fan"), read("p2.gw"), ["1/10"])
    assert ok
    assert rep["charge"] == "4"


def test_acceptance_subset():
    rep, ok = mixfrob.verify_all(criteria=[1, 2])
    assert ok
    assert [c["id"] for c in rep["criteria"]] == [1, 2]
