from fractions import Fraction

import pytest

import thetacalc


def test_worked_example():
    doc = thetacalc.evaluate((1, 0, -1), (2, 3, 2), 1)
    assert doc["values"] == {"main": 9, "two": 9, "three": 1}
    assert doc["d_v"] == "1" and doc["d_w"] == "5"


def test_non_orthogonal_raises():
    with pytest.raises(ArithmeticError, match="not orthogonal"):
        thetacalc.evaluate((1, 0, -1), (2, 4, 3), 1)


def test_lattice_helpers():
    assert thetacalc.d_v((2, 3, 2), 1) == 5
    assert thetacalc.chi_tensor((1, 0, -1), (2, 3, 2), 1) == 0
    assert thetacalc.fm_vector((2, 3, 5), 2) == (5, -3, 2)
    assert thetacalc.binom(-9, 4) == 495
    big = 10**40
    assert thetacalc.d_v((1, 0, -big), 1) == big


def test_kummer():
    doc = thetacalc.kummer(5, 7, 2)
    assert doc["kummer"] == "2475" and doc["bb_chi"] == "2475"
    assert Fraction(doc["pull1_residual"]) == 0


def test_verify_subset_and_negative_control():
    ok, reports = thetacalc.verify(trials=3, only=["sec4"])
    assert ok and {r["identity_id"] for r in reports} == {"sec4_table", "sec4_lemma"}
    bad, _ = thetacalc.verify(trials=1, only=["fmtl"], corrupt_sign=True)
    assert not bad
    assert "fmtl" in thetacalc.identities()


def test_enumerate_and_cli():
    csv = thetacalc.enumerate_csv([1], 2, 3, 4)
    assert "\n1,1,0,-1,2,3,2,1,5,9,9,1,h2:+\n" in csv
    status, out, _ = thetacalc.run_cli(["kummer", "--n", "2", "--chiD", "3", "--r", "0"])
    assert status == 0 and '"kummer": "8"' in out
    assert thetacalc.run_cli(["verify", "--only", "nope"])[0] == 2
