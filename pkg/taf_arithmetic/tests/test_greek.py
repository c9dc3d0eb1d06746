# -*- coding: utf-8 -*-
"""Tests for greek.py"""

import logging

import pytest

from taf_arithmetic import greek
from taf_arithmetic.exceptions import PreconditionError
from taf_arithmetic.greek import GreekIndex


def test_norm_I():
    assert greek.norm_I(GreekIndex(5, 1, (1, 1))) == 1
    assert greek.norm_I(GreekIndex(5, 2, (1, 1, 1))) == 10
    assert greek.norm_I(GreekIndex(3, 2, (1, 2, 1))) == 10


def test_greek_stem():
    assert greek.greek_stem(GreekIndex(5, 1, (1, 1)), 1) == 7
    assert greek.greek_stem(GreekIndex(5, 2, (1, 1, 1)), 1) == 38
    assert greek.greek_stem(GreekIndex(5, 2, (1, 1, 1)), 0) == -10


def test_alpha_one_in_stem_2p_minus_3():
    for p in (3, 5, 7, 11):
        assert greek.greek_stem(GreekIndex(p, 1, (1, 1)), 1) == 2 * p - 3


def test_greek_index_validation():
    with pytest.raises(PreconditionError):
        GreekIndex(5, 2, (1, 1))
    with pytest.raises(PreconditionError):
        GreekIndex(4, 1, (1, 1))
    with pytest.raises(PreconditionError):
        GreekIndex(5, 1, (0, 1))


def test_alpha_invariant_examples():
    assert greek.alpha_invariant_order(5, 4, 1).exists
    assert greek.alpha_invariant_order(5, 4, 1).order == 5
    assert not greek.alpha_invariant_order(5, 5, 1).exists
    verdict = greek.alpha_invariant_order(5, 20, 2)
    assert verdict.exists and verdict.order == 25
    assert greek.alpha_invariant_order(5, 4, 1).describe() == "exists, order 5"


def test_alpha_rejects_p_two():
    with pytest.raises(PreconditionError):
        greek.alpha_invariant_order(2, 4, 1)


def test_alpha_bernoulli_agreement():
    for p in (5, 7):
        for i in range(1, p * p + 1):
            t = (p - 1) * i
            assert greek.alpha_max_order(p, t) == greek.bernoulli_order(p, t)


def test_alpha_monotone_in_j():
    for p in (5, 7):
        for i in range(1, 30):
            t = (p - 1) * i
            top = greek.alpha_max_order(p, t)
            for j in range(1, top + 3):
                assert greek.alpha_invariant_order(p, t, j).exists == (j <= top)


def test_beta_examples():
    verdict = greek.beta_invariant_exists(5, 5, 1, 1)
    assert verdict.exists
    assert verdict.t == 116
    assert verdict.m == 0
    assert not greek.beta_invariant_exists(5, 5, 5, 2).exists
    assert not greek.beta_invariant_exists(5, 1, 2, 1).exists


def test_beta_condition_two_bound_attained():
    p = 5
    # p^0 + p^1 - 1 = p
    assert greek.beta_invariant_exists(p, p, p, 1).exists
    assert not greek.beta_invariant_exists(p, p, p + 1, 1).exists


def test_beta_nu_zero_is_flagged(caplog):
    with caplog.at_level(logging.INFO, logger="taf_arithmetic.greek"):
        verdict = greek.beta_invariant_exists(5, 1, 1, 1)
    assert not verdict.exists
    assert verdict.m == -1
    assert "nu-zero-literal" in verdict.flags
    assert "nu_p(i)=0" in caplog.text


def test_beta_rejects_small_primes():
    with pytest.raises(PreconditionError):
        greek.beta_invariant_exists(3, 1, 1, 1)


def test_bracket_index_is_unique_solution():
    for p in (5, 7):
        for nu in range(0, 3):
            for j in range(1, 60):
                m = greek.bracket_index(p, nu, j)
                assert greek._bracket(p, nu, m + 1) < j <= greek._bracket(p, nu, m)
