import pathlib

import pytest

import csheaf

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def fixture(name):
    return (FIXTURES / name).read_text()


def test_degrees():
    assert sorted(csheaf.character_degrees("dihedral 4")) == [1, 1, 1, 1, 2]
    assert sorted(csheaf.character_degrees("heisenberg 3")) == [1] * 9 + [3, 3]


def test_character_table_is_exact():
    rows = csheaf.character_table("cyclic 3")
    assert rows[0] == ["1", "1", "1"]
    assert sorted(rows[1]) == ["-1 - z3", "1", "z3"]


def test_inner_forms():
    assert csheaf.inner_form_orders("UL 3 2") == [8]
    assert csheaf.inner_form_orders("exampleA4 2") == [8, 8]


def test_verify_easy_ul3():
    rep = csheaf.run("verify", fixture("ul3_q2.fx"), "easy")
    assert rep["passed"]
    assert rep["result"]["easy"]["packets"] == 5


def test_double_d4():
    rep = csheaf.run("double", fixture("d4_identity.fx"))
    assert rep["passed"]
    assert rep["result"]["double"]["dimension"] == 22


def test_deterministic():
    a = csheaf._core.run("packets", fixture("ul3_q3.fx"), "", 4, 0)
    b = csheaf._core.run("packets", fixture("ul3_q3.fx"), "", 1, 0)
    assert a == b


def test_malformed():
    with pytest.raises(csheaf.FixtureError):
        csheaf.run("verify", fixture("malformed.fx"))
