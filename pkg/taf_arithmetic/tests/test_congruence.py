# -*- coding: utf-8 -*-
"""Tests for congruence.py"""

import logging

import pytest

from taf_arithmetic import congruence, greek, modforms
from taf_arithmetic.exact_arith import span_contains, span_order, valuation_int
from taf_arithmetic.exceptions import PreconditionError, PrecisionError
from taf_arithmetic.modforms import QSeries, WeightedForm


def _one(prec):
    return WeightedForm(0, 0, QSeries.one(prec), "1")


def _eisenstein_form(t, prec, exponent=1):
    series = modforms.eisenstein(t, prec) ** exponent
    return WeightedForm(t * exponent, 0, series, f"E{t}^{exponent}")


def test_sturm_bound():
    assert congruence.sturm_bound(4, 2, 1) == 5
    assert congruence.sturm_bound(12, 2, 0) == 4
    assert congruence.working_precision(4, 2, 1) == 8
    assert congruence.working_precision(4, 2, 1, prec=40) == 40
    with pytest.raises(PrecisionError):
        congruence.working_precision(4, 2, 1, prec=2)


def test_compute_A_weight_four():
    group = congruence.compute_A(5, 2, 4, 1)
    assert group.order == 5
    assert group.exponent == 5
    assert len(group.generators) == 1
    prec = group.prec
    cleared_e4 = (modforms.eisenstein(4, prec) * modforms.delta(prec)).reduce_mod(5)
    rows = [list(g.series) for g in group.generators]
    assert span_contains(rows, list(cleared_e4), 5)


def test_compute_A_weight_six_is_trivial():
    group = congruence.compute_A(5, 2, 6, 1)
    assert group.is_trivial
    assert group.generators == []
    assert group.exponent == 1


def test_compute_A_weight_twenty_mod_25():
    group = congruence.compute_A(5, 2, 20, 2)
    assert group.exponent == 25
    prec = group.prec
    cleared = (modforms.eisenstein(20, prec) * modforms.delta(prec)).reduce_mod(25)
    assert span_contains([list(g.series) for g in group.generators], list(cleared), 25)


def test_compute_A_matches_alpha_orders():
    for p in (5, 7):
        for i in range(1, 26):
            t = (p - 1) * i
            j = valuation_int(i, p) + 1
            group = congruence.compute_A(p, 2, t, j, m_max=0)
            assert group.exponent == greek.alpha_invariant_order(p, t, j).order
            assert all(p**j % order == 0 for order in group.orders)


def test_compute_A_stable_in_m_max():
    for t in (4, 8, 20):
        low = congruence.compute_A(5, 2, t, 1, m_max=0)
        high = congruence.compute_A(5, 2, t, 1, m_max=1)
        assert low.exponent == high.exponent


def test_compute_A_preconditions():
    with pytest.raises(PreconditionError):
        congruence.compute_A(3, 2, 4, 1)
    with pytest.raises(PreconditionError):
        congruence.compute_A(5, 5, 4, 1)
    with pytest.raises(PrecisionError):
        congruence.compute_A(5, 2, 4, 1, prec=2)


def test_compute_A_odd_weight():
    group = congruence.compute_A(5, 2, 7, 1)
    assert group.is_trivial


def test_compute_B_preconditions():
    with pytest.raises(PreconditionError):
        congruence.compute_B(5, 2, 24, 3, 1)
    with pytest.raises(PreconditionError):
        congruence.compute_B(5, 2, 24, 4, 2)


def test_compute_B_odd_weight_is_trivial():
    group = congruence.compute_B(5, 2, 9, 4, 1)
    assert group.is_trivial
    assert group.verdict == congruence.NO_WITNESS


def test_compute_B_weight_eight():
    # E4 == 1 mod 5 and dim M_{8+12m} = dim M_{4+12m}, so the q-expansions
    # of weight 8 and weight 4 forms coincide mod 5
    group = congruence.compute_B(5, 2, 8, 4, 1)
    assert group.verdict == congruence.NO_WITNESS
    assert group.order == 1


def test_compute_B_beta_one():
    group = congruence.compute_B(5, 2, 24, 4, 1)
    assert group.verdict == congruence.WITNESS_FOUND
    assert not group.is_trivial
    record = group.to_json()
    for key in ("p", "ell", "t", "j", "k", "exponent", "generators", "verdict", "prec"):
        assert key in record
    assert record["k"] == 1
    assert record["verdict"] == "witness-found"
    assert all(5 % order == 0 for order in group.orders)


def test_level_basis_spans_gamma_zero_two():
    ring = congruence._Ring(5, 20, 2, 0)
    series = ring.level_basis(44)
    assert len(series) == 22
    # M_44(Gamma_0(2)) has rank 1 + 44 // 4
    assert span_order([list(s) for s in series], 5) == 5**12
    assert ring.level_basis(2) == [ring.level_e2]


def test_serre_examples():
    one = _one(30)
    e4 = _eisenstein_form(4, 30)
    assert congruence.serre_congruence_check(one, e4, 5, 1) == "consistent"
    e4_fifth = _eisenstein_form(4, 30, exponent=5)
    assert congruence.serre_congruence_check(one, e4_fifth, 5, 2) == "consistent"
    e6 = _eisenstein_form(6, 20)
    assert congruence.serre_congruence_check(e6, e6, 5, 3) == "consistent"


def test_serre_weight_violation():
    # at one coefficient every pair of forms agrees
    verdict = congruence.serre_congruence_check(_one(1), _eisenstein_form(6, 1), 5, 1)
    assert verdict == "weight-violation"


def test_serre_rejects_incongruent_inputs():
    with pytest.raises(PreconditionError):
        congruence.serre_congruence_check(_one(10), _eisenstein_form(6, 10), 5, 1)


def test_beta_cross_validation(caplog):
    caplog.set_level(logging.INFO)
    table = congruence.beta_cross_validation(5, i_max=1)
    assert list(table.columns) == [
        "i",
        "nu",
        "j",
        "k",
        "t",
        "lowered_by",
        "predicate",
        "congruence",
        "agree",
    ]
    assert len(table) == 1
    assert table["t"][0] == 24
    assert table["nu"][0] == 0
    assert table["lowered_by"][0] == 4
    assert table["congruence"][0] == congruence.WITNESS_FOUND
    assert "beta i=1 (nu=0) j=1 k=1" in caplog.text


@pytest.mark.parametrize("k", [1, 2])
def test_beta_cross_validation_disagrees_only_at_nu_zero(caplog, k):
    caplog.set_level(logging.WARNING)
    table = congruence.beta_cross_validation(5, i_max=5, k=k)
    assert set(table["i"]) == {1, 2, 3, 4, 5}
    assert list(table[table["i"] == 5]["j"]) == [1, 2, 3, 4, 5]
    warnings = [r.getMessage() for r in caplog.records if r.levelno == logging.WARNING]
    for row in table[~table["agree"]].itertuples():
        assert row.nu == 0
        prefix = f"beta i={row.i} (nu=0) j={row.j} k={k}"
        assert any(message.startswith(prefix) for message in warnings)
    fifth = table[table["i"] == 5]
    if k == 1:
        assert (fifth["congruence"] == congruence.WITNESS_FOUND).all()
    else:
        assert list(fifth["congruence"])[:4] == ["precondition"] * 4
        assert list(fifth["congruence"])[4] != congruence.WITNESS_FOUND
