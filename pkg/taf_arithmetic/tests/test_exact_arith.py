# -*- coding: utf-8 -*-
"""Tests for exact_arith.py"""

from fractions import Fraction
import itertools
import random

import pytest

from taf_arithmetic import exact_arith
from taf_arithmetic.exact_arith import INFINITY
from taf_arithmetic.exceptions import PreconditionError


def test_val_p_examples():
    assert exact_arith.val_p(Fraction(1, 30), 5) == -1
    assert exact_arith.val_p(0, 7) is INFINITY
    assert exact_arith.val_p(Fraction(25, 3), 5) == 2


def test_val_p_rejects_composite():
    with pytest.raises(PreconditionError):
        exact_arith.val_p(3, 6)


def test_infinity_sentinel_orders_above_integers():
    assert INFINITY > 10**50
    assert not INFINITY < 3
    assert min(4, INFINITY) == 4
    assert INFINITY + 3 is INFINITY


def test_val_p_multiplicative():
    rng = random.Random(1)
    for _ in range(300):
        x = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**6))
        y = Fraction(rng.randint(-(10**6), -1), rng.randint(1, 10**6))
        for p in (2, 3, 5, 7):
            assert exact_arith.val_p(x * y, p) == exact_arith.val_p(
                x, p
            ) + exact_arith.val_p(y, p)


def test_residue_elt_arithmetic():
    a = exact_arith.ResidueElt(25, 30)
    assert a.value == 5
    assert (a * 5).value == 0
    assert a.order() == 5
    assert (a + 21).value == 1
    with pytest.raises(PreconditionError):
        exact_arith.ResidueElt(12, 1)


def test_kernel_of_p_mod_p_squared():
    m = exact_arith.ResidueMatrix(25, [[5]])
    assert exact_arith.howell_kernel(m) == [[5]]


def test_kernel_of_identity_is_zero():
    m = exact_arith.ResidueMatrix(27, [[1, 0], [0, 1]])
    assert exact_arith.howell_kernel(m) == []


def _solutions(matrix):
    n = matrix.cols
    return {
        v
        for v in itertools.product(range(matrix.modulus), repeat=n)
        if not any(matrix.apply(v))
    }


def _closure(gens, modulus, n):
    span = {tuple([0] * n)}
    frontier = list(span)
    while frontier:
        new = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % modulus for a, b in zip(v, g))
                if w not in span:
                    span.add(w)
                    new.append(w)
        frontier = new
    return span


def test_kernel_example_mod_8():
    m = exact_arith.ResidueMatrix(8, [[2, 4], [0, 0]])
    kernel = exact_arith.howell_kernel(m)
    assert all(not any(m.apply(v)) for v in kernel)
    solutions = _solutions(m)
    assert len(solutions) == 16
    assert _closure(kernel, 8, 2) == solutions


def test_kernel_matches_exhaustive_enumeration():
    rng = random.Random(7)
    for modulus in (4, 8, 9, 25, 27):
        for _ in range(6):
            rows = rng.randint(1, 3)
            cols = rng.randint(1, 3)
            entries = [
                [rng.randrange(modulus) for _ in range(cols)] for _ in range(rows)
            ]
            m = exact_arith.ResidueMatrix(modulus, entries)
            kernel = exact_arith.howell_kernel(m)
            for v in kernel:
                assert not any(m.apply(v))
            assert _closure(kernel, modulus, cols) == _solutions(m)
            assert exact_arith.span_order(kernel, modulus) == len(_solutions(m))


def test_howell_form_is_canonical():
    rows = [[2, 4, 6], [4, 0, 2]]
    shuffled = [[6, 4, 0], [2, 4, 6], [0, 0, 0]]
    # same span: [6,4,0] = [2,4,6] + [4,0,2] - 8-multiples
    assert exact_arith.howell_form(rows, 8) == exact_arith.howell_form(
        shuffled + rows, 8
    )


def test_span_contains():
    rows = [[3, 0], [0, 9]]
    assert exact_arith.span_contains(rows, [6, 18], 27)
    assert not exact_arith.span_contains(rows, [1, 0], 27)
    assert exact_arith.span_contains(rows, [0, 0], 27)


def test_kronecker_examples():
    assert exact_arith.kronecker(-4, 5) == 1
    assert exact_arith.kronecker(-4, 2) == 0
    assert exact_arith.kronecker(-20, 3) == 1
    assert exact_arith.kronecker(-4, 3) == -1
    for D in (-3, -4, -20, 5, 12):
        assert exact_arith.kronecker(D, 1) == 1


def _legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def test_kronecker_agrees_with_euler_criterion():
    for D in (-3, -4, -7, -8, -20, 5, 13):
        for p in (3, 5, 7, 11, 13, 17, 19, 23):
            assert exact_arith.kronecker(D, p) == _legendre(D, p)


def test_kronecker_completely_multiplicative():
    rng = random.Random(3)
    for _ in range(300):
        D = rng.choice([-3, -4, -7, -8, -15, -20, -23, 5, 8, 12, 13])
        a = rng.randint(1, 100)
        b = rng.randint(1, 100)
        assert exact_arith.kronecker(D, a * b) == exact_arith.kronecker(
            D, a
        ) * exact_arith.kronecker(D, b)
