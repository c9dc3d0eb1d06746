# -*- coding: utf-8 -*-
"""Tests for hondatate.py"""

from fractions import Fraction

import pytest

from taf_arithmetic import hondatate, newton
from taf_arithmetic.exceptions import PreconditionError
from taf_arithmetic.hondatate import CMPlaceStructure, PAdicType, Place, WeilInteger


def _split(eta_u, eta_uc, e=1):
    structure = CMPlaceStructure(
        5, [Place("u", e), Place("uc", e)], {"u": "uc", "uc": "u"}
    )
    return PAdicType(structure, {"u": eta_u, "uc": eta_uc})


def _invariant_place(eta, e=1, f=1, degree=2):
    structure = CMPlaceStructure(5, [Place("x", e, f)], {"x": "x"}, degree=degree)
    return PAdicType(structure, {"x": eta})


def test_validate_type():
    assert hondatate.validate_type(hondatate.split_height_n_type(4, 5)) == []
    assert hondatate.validate_type(_split(Fraction(1, 2), Fraction(1, 2))) == []
    assert hondatate.validate_type(_split(1, 1))


def test_structure_rejects_bad_conjugation():
    with pytest.raises(PreconditionError):
        CMPlaceStructure(5, [Place("u"), Place("uc")], {"u": "uc", "uc": "uc"})
    with pytest.raises(PreconditionError):
        CMPlaceStructure(5, [Place("u", 2), Place("uc", 1)], {"u": "uc", "uc": "u"})


def test_slopes_of_type():
    slopes = hondatate.slopes_of_type(hondatate.split_height_n_type(3))
    assert slopes == {"u": Fraction(1, 3), "uc": Fraction(2, 3)}
    half = _invariant_place(Fraction(1, 2))
    assert hondatate.slopes_of_type(half)["x"] == Fraction(1, 2)
    assert hondatate.slopes_of_type(_invariant_place(1, e=2))["x"] == Fraction(1, 2)
    assert hondatate.slopes_of_type(_split(0, 1))["u"] == 0
    with pytest.raises(PreconditionError):
        hondatate.slopes_of_type(_split(1, 1))


def test_split_type_invariants():
    for n in range(2, 13):
        result = hondatate.invariants_and_dimension(hondatate.split_height_n_type(n))
        assert result.inv["u"] == Fraction(1, n)
        assert result.inv["uc"] == Fraction(n - 1, n)
        assert result.m == n
        assert result.dimension == n


def test_invariant_place_and_ordinary_types():
    result = hondatate.invariants_and_dimension(_invariant_place(Fraction(1, 2)))
    assert result.m == 2
    assert result.dimension == 2
    ordinary = hondatate.invariants_and_dimension(_split(0, 1))
    assert ordinary.m == 1
    assert ordinary.dimension == 1


def test_invariants_from_frobenius_valuations():
    ptype = hondatate.split_height_n_type(3)
    result = hondatate.invariants_and_dimension(
        ptype, pi_valuations={"u": 2, "uc": 4}, r=6
    )
    assert result.inv["u"] == Fraction(1, 3)
    with pytest.raises(PreconditionError):
        hondatate.invariants_and_dimension(ptype, pi_valuations={"u": 1, "uc": 5}, r=6)


def test_kottwitz_shift():
    for n in range(2, 13):
        ptype = hondatate.split_height_n_type(n)
        plain = hondatate.invariants_and_dimension(ptype).inv
        assert hondatate.kottwitz_invariants(ptype, {}) == plain
        assert hondatate.kottwitz_invariants(ptype, {"u": 0, "uc": 0}) == plain
    ptype = hondatate.split_height_n_type(5)
    shifts = {"u": Fraction(1, 5), "l7": Fraction(1, 2)}
    shifted = hondatate.kottwitz_invariants(ptype, shifts)
    assert shifted["u"] == 0
    assert shifted["l7"] == Fraction(1, 2)


def test_kottwitz_real_place():
    structure = CMPlaceStructure(
        5,
        [Place("u"), Place("uc"), Place("inf", kind="real")],
        {"u": "uc", "uc": "u"},
    )
    ptype = PAdicType(structure, {"u": Fraction(1, 3), "uc": Fraction(2, 3)})
    result = hondatate.kottwitz_invariants(ptype, {"inf": Fraction(1, 2)})
    assert result["inf"] == 0


def test_minimality():
    single = CMPlaceStructure(5, [Place("x")], {"x": "x"})
    covering = {"u": ("x", 1), "uc": ("x", 1)}
    for n in range(3, 8):
        verdict, _ = hondatate.minimality_check(
            hondatate.split_height_n_type(n), single, covering
        )
        assert verdict == "minimal-over-sub"
    verdict, eta = hondatate.minimality_check(
        _split(Fraction(1, 2), Fraction(1, 2)), single, covering
    )
    assert verdict == "descends"
    assert eta == {"x": Fraction(1, 2)}
    assert not hondatate.is_minimal(
        _split(Fraction(1, 2), Fraction(1, 2)), [(single, covering)]
    )


def test_minimality_pulled_back_type_descends():
    base = hondatate.split_height_n_type(3)
    upper = CMPlaceStructure(
        5,
        [Place("u1", 2), Place("u1c", 2)],
        {"u1": "u1c", "u1c": "u1"},
    )
    pulled = PAdicType(upper, {"u1": Fraction(2, 3), "u1c": Fraction(4, 3)})
    verdict, eta = hondatate.minimality_check(
        pulled, base.structure, {"u1": ("u", 2), "u1c": ("uc", 2)}
    )
    assert verdict == "descends"
    assert eta == base.eta


def test_minimality_rejects_inconsistent_covering():
    single = CMPlaceStructure(5, [Place("x")], {"x": "x"})
    with pytest.raises(PreconditionError):
        hondatate.minimality_check(
            hondatate.split_height_n_type(3), single, {"u": ("x", 1)}
        )


def test_polygon_of_type_is_polarizable():
    for n in range(2, 9):
        ptype = hondatate.split_height_n_type(n)
        m = hondatate.invariants_and_dimension(ptype).m
        report = hondatate.polygon_of_type(ptype, m)
        assert report.realizable
        assert newton.is_polarizable(report.polygon)
        assert newton.total(report.polygon) == (2 * n, n)


def test_polygon_of_type_non_realizable_height():
    report = hondatate.polygon_of_type(hondatate.split_height_n_type(3), 1)
    assert not report.realizable
    assert report.problems


def test_verify_weil_integer():
    assert hondatate.verify_weil_integer(WeilInteger(-1, 2, 1, 5))[0] == "ok"
    assert hondatate.verify_weil_integer(WeilInteger(-1, 1, 1, 2))[0] == "ok"
    status, problems = hondatate.verify_weil_integer(WeilInteger(-1, 3, 1, 5))
    assert status == "violation"
    assert "norm 10" in problems[0]


def test_base_change_and_type():
    w = WeilInteger(-1, 2, 1, 5)
    squared = hondatate.base_change(w, 2)
    assert (squared.a, squared.b, squared.q) == (3, 4, 25)
    assert hondatate.verify_weil_integer(squared)[0] == "ok"
    ptype = hondatate.type_of_weil_integer(w)
    assert ptype.eta == {"u": 0, "uc": 1}
    assert hondatate.type_of_weil_integer(squared).eta == ptype.eta


def test_type_of_inert_and_ramified_weil_integers():
    # 3 is inert in Q(i): pi = 3, q = 9
    assert hondatate.type_of_weil_integer(WeilInteger(-1, 3, 0, 9)).eta == {
        "x": Fraction(1, 2)
    }
    # 2 ramifies in Q(i): pi = 1 + i, q = 2
    ramified = hondatate.type_of_weil_integer(WeilInteger(-1, 1, 1, 2))
    assert hondatate.slopes_of_type(ramified) == {"x": Fraction(1, 2)}


def test_blinear_dimension():
    assert hondatate.blinear_dimension(2, 1, 3) == 3


def test_type_json_round_trip():
    ptype = hondatate.split_height_n_type(4, 7)
    again = PAdicType.from_json(ptype.to_json())
    assert again.eta == ptype.eta
    assert again.structure.to_json() == ptype.structure.to_json()
