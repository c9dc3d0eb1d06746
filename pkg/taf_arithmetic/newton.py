# -*- coding: utf-8 -*-
"""Newton polygons of p-divisible groups up to isogeny.

A polygon is a multiset of simple summands G_{d,h} (dimension d, height h,
gcd(d, h) = 1), stored as sorted (d, h, mult) triples of increasing slope
d/h. The horizontal axis of a drawing is total height, the vertical axis
total dimension.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
import logging

from taf_arithmetic.exceptions import PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewtonPolygon:
    segments: tuple = ()
    notes: tuple = field(default=(), compare=False)

    def __iter__(self):
        return iter(self.segments)

    def slopes(self):
        return [Fraction(d, h) for d, h, _ in self.segments]

    def to_json(self):
        height, dim = total(self)
        return {
            "segments": [list(s) for s in self.segments],
            "height": height,
            "dimension": dim,
            "breakpoints": [list(b) for b in breakpoints(self)],
            "notes": list(self.notes),
        }


# ----------------------------------------------------------
def from_slopes(pairs):
    """Canonical polygon from (d, h, mult) triples"""
    merged = {}
    notes = []
    for entry in pairs:
        if len(entry) == 2:
            d, h = entry
            mult = 1
        else:
            d, h, mult = entry
        d, h, mult = int(d), int(h), int(mult)
        if h < 1 or d < 0 or d > h:
            raise PreconditionError(f"invalid slope pair (d={d}, h={h})")
        if mult < 1:
            raise PreconditionError("multiplicity must be positive")
        g = gcd(d, h)
        if g > 1:
            notes.append(f"({d},{h}) read as {g * mult} copies of ({d // g},{h // g})")
            d, h, mult = d // g, h // g, mult * g
        merged[(d, h)] = merged.get((d, h), 0) + mult
    segments = tuple(
        (d, h, mult)
        for (d, h), mult in sorted(merged.items(), key=lambda x: Fraction(*x[0]))
    )
    if notes:
        logger.debug("normalized slope input: %s", "; ".join(notes))
    return NewtonPolygon(segments, tuple(notes))


def parse_slopes(text):
    """'1/3,1/2,1' -> polygon; each entry d/h, optionally with 'xN' multiplicity"""
    pairs = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        mult = 1
        if "x" in item:
            item, mult = item.split("x")
        if "/" in item:
            d, h = item.split("/")
        else:
            d, h = item, 1
        pairs.append((int(d), int(h), int(mult)))
    return from_slopes(pairs)


def total(polygon):
    """(height, dimension)"""
    height = sum(h * mult for _, h, mult in polygon.segments)
    dim = sum(d * mult for d, _, mult in polygon.segments)
    return height, dim


def dual(polygon):
    """Cartier dual: slope d/h becomes (h-d)/h"""
    return from_slopes([(h - d, h, mult) for d, h, mult in polygon.segments])


def direct_sum(first, second):
    return from_slopes(list(first.segments) + list(second.segments))


def is_polarizable(polygon):
    """Symmetric under slope -> 1 - slope"""
    return dual(polygon).segments == polygon.segments


def breakpoints(polygon):
    points = [(0, 0)]
    x = y = 0
    for d, h, mult in polygon.segments:
        x += h * mult
        y += d * mult
        points.append((x, y))
    return points


def render_ascii(polygon):
    """Breakpoints plus a dotted grid: 'o' breakpoint, '*' lattice point on
    the polygon, '.' elsewhere. Top row is the largest dimension."""
    points = breakpoints(polygon)
    height, dim = total(polygon)
    on_polygon = set(points)
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        for x in range(x0, x1 + 1):
            num = (y1 - y0) * (x - x0)
            if num % (x1 - x0) == 0:
                on_polygon.add((x, y0 + num // (x1 - x0)))
    corners = set(points)
    lines = []
    for y in range(dim, -1, -1):
        row = []
        for x in range(height + 1):
            if (x, y) in corners:
                row.append("o")
            elif (x, y) in on_polygon:
                row.append("*")
            else:
                row.append(".")
        lines.append(" ".join(row))
    return points, "\n".join(lines)
