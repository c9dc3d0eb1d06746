# -*- coding: utf-8 -*-
"""Tests for newton.py"""

import random

import pytest

from taf_arithmetic import newton
from taf_arithmetic.exceptions import PreconditionError

FIGURE = [(1, 1, 1), (1, 3, 1), (1, 2, 1)]


def _random_polygon(rng):
    pairs = []
    for _ in range(rng.randint(0, 5)):
        h = rng.randint(1, 7)
        pairs.append((rng.randint(0, h), h, rng.randint(1, 3)))
    return newton.from_slopes(pairs)


def test_from_slopes_sorts():
    polygon = newton.from_slopes(FIGURE)
    assert polygon.segments == ((1, 3, 1), (1, 2, 1), (1, 1, 1))


def test_from_slopes_reduces_non_coprime_pairs():
    polygon = newton.from_slopes([(2, 4, 1)])
    assert polygon.segments == ((1, 2, 2),)
    assert polygon.notes
    assert newton.total(polygon) == (4, 2)


def test_from_slopes_merges_equal_slopes():
    polygon = newton.from_slopes([(1, 2, 1), (2, 4, 1), (0, 1, 1)])
    assert polygon.segments == ((0, 1, 1), (1, 2, 3))


def test_from_slopes_rejects_bad_pairs():
    for pair in [(3, 2, 1), (0, 0, 1), (-1, 2, 1)]:
        with pytest.raises(PreconditionError):
            newton.from_slopes([pair])


def test_empty_polygon():
    polygon = newton.from_slopes([])
    assert polygon.segments == ()
    assert newton.total(polygon) == (0, 0)
    points, grid = newton.render_ascii(polygon)
    assert points == [(0, 0)]
    assert grid == "o"


def test_total():
    assert newton.total(newton.from_slopes(FIGURE)) == (6, 3)
    assert newton.total(newton.from_slopes([(1, 2, 2)])) == (4, 2)


def test_dual():
    assert newton.dual(newton.from_slopes([(1, 3, 1)])).segments == ((2, 3, 1),)
    half = newton.from_slopes([(1, 2, 4)])
    assert newton.dual(half) == half


def test_is_polarizable():
    assert newton.is_polarizable(newton.from_slopes([(0, 1, 1), (1, 1, 1)]))
    assert newton.is_polarizable(newton.from_slopes([(1, 3, 1), (2, 3, 1)]))
    assert not newton.is_polarizable(newton.from_slopes([(1, 3, 1)]))


def test_render_figure():
    points, grid = newton.render_ascii(newton.from_slopes(FIGURE))
    assert points == [(0, 0), (3, 1), (5, 2), (6, 3)]
    rows = grid.splitlines()
    assert len(rows) == 4
    assert rows[-1].startswith("o")
    assert rows[0].endswith("o")


def test_render_slope_one():
    points, grid = newton.render_ascii(newton.from_slopes([(1, 1, 2)]))
    assert points == [(0, 0), (2, 2)]
    assert grid.splitlines()[1] == ". * ."


def test_parse_slopes():
    polygon = newton.parse_slopes("1/3,1/2,1")
    assert newton.breakpoints(polygon) == [(0, 0), (3, 1), (5, 2), (6, 3)]
    assert newton.parse_slopes("1/2x2").segments == ((1, 2, 2),)


def test_random_polygon_properties():
    rng = random.Random(11)
    for _ in range(1000):
        polygon = _random_polygon(rng)
        height, dim = newton.total(polygon)
        assert newton.total(newton.dual(polygon)) == (height, height - dim)
        assert newton.dual(newton.dual(polygon)) == polygon
        assert newton.is_polarizable(newton.direct_sum(polygon, newton.dual(polygon)))
        slopes = [
            (y1 - y0, x1 - x0)
            for (x0, y0), (x1, y1) in zip(
                newton.breakpoints(polygon), newton.breakpoints(polygon)[1:]
            )
        ]
        for (a, b), (c, d) in zip(slopes, slopes[1:]):
            assert a * d <= c * b


def test_to_json():
    data = newton.from_slopes(FIGURE).to_json()
    assert data["height"] == 6
    assert data["breakpoints"] == [[0, 0], [3, 1], [5, 2], [6, 3]]
