# -*- coding: utf-8 -*-
"""Exact arithmetic: rationals, p-adic valuations, residue rings Z/p^k,
Howell normal form over Z/p^k and the Kronecker symbol.

Every other engine builds on this module. Rationals are plain
``fractions.Fraction`` values; matrices are numpy object arrays holding
python ints, so no entry ever overflows.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import logging
import numpy as np
from sympy import factorint, isprime
from sympy.ntheory import jacobi_symbol

from taf_arithmetic.exceptions import PreconditionError

logger = logging.getLogger(__name__)

Rat = Fraction


# ----------------------------------------------------------
class _Infinity:
    """Valuation of zero. Compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("taf-infinity")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INFINITY = _Infinity()


def is_prime(n):
    """Deterministic primality (sympy)"""
    return isprime(int(n))


def require_prime(p, name="p"):
    if not is_prime(p):
        raise PreconditionError(f"{name}={p} is not a prime")
    return int(p)


@lru_cache(maxsize=4096)
def prime_power_parts(modulus):
    """Return (p, k) with modulus == p**k"""
    factors = factorint(int(modulus))
    if len(factors) != 1:
        raise PreconditionError(f"modulus {modulus} is not a prime power")
    ((p, k),) = factors.items()
    return int(p), int(k)


def valuation_int(n, p):
    """nu_p of an integer, INFINITY for zero"""
    n = int(n)
    if n == 0:
        return INFINITY
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def val_p(x, p):
    """p-adic valuation of a rational; INFINITY for x == 0"""
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return valuation_int(x.numerator, p) - valuation_int(x.denominator, p)


def unit_part(n, p):
    """Strip all factors p from a nonzero integer"""
    while n % p == 0:
        n //= p
    return n


# ----------------------------------------------------------
@dataclass(frozen=True)
class ResidueElt:
    """Element of Z/p^k"""

    modulus: int
    value: int

    def __post_init__(self):
        prime_power_parts(self.modulus)
        object.__setattr__(self, "value", int(self.value) % self.modulus)

    def _coerce(self, other):
        if isinstance(other, ResidueElt):
            if other.modulus != self.modulus:
                raise PreconditionError(
                    f"moduli differ: {self.modulus} vs {other.modulus}"
                )
            return other.value
        return int(other)

    def __add__(self, other):
        return ResidueElt(self.modulus, self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ResidueElt(self.modulus, self.value - self._coerce(other))

    def __rsub__(self, other):
        return ResidueElt(self.modulus, self._coerce(other) - self.value)

    def __mul__(self, other):
        return ResidueElt(self.modulus, self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return ResidueElt(self.modulus, -self.value)

    def __int__(self):
        return self.value

    def valuation(self):
        """nu_p of the value, capped: zero has valuation INFINITY"""
        p, _ = prime_power_parts(self.modulus)
        return valuation_int(self.value, p)

    def order(self):
        """Additive order, a power of p"""
        p, k = prime_power_parts(self.modulus)
        v = self.valuation()
        if v is INFINITY:
            return 1
        return p ** (k - v)


class ResidueMatrix:
    """Dense matrix over Z/p^k backed by a numpy object array"""

    def __init__(self, modulus, entries):
        self.p, self.k = prime_power_parts(modulus)
        self.modulus = int(modulus)
        rows = [[int(x) % self.modulus for x in row] for row in entries]
        width = len(rows[0]) if rows else 0
        if any(len(row) != width for row in rows):
            raise PreconditionError("ragged matrix")
        self.entries = np.array(rows, dtype=object).reshape(len(rows), width)

    @property
    def rows(self):
        return self.entries.shape[0]

    @property
    def cols(self):
        return self.entries.shape[1]

    def __getitem__(self, index):
        i, j = index
        return ResidueElt(self.modulus, self.entries[i, j])

    def tolist(self):
        return [[int(x) for x in row] for row in self.entries]

    def transpose(self):
        return ResidueMatrix(self.modulus, self.entries.T.tolist())

    def apply(self, vector):
        """M.v reduced mod the modulus"""
        vec = np.array([int(x) for x in vector], dtype=object)
        if len(vec) != self.cols:
            raise PreconditionError("vector length does not match columns")
        if self.rows == 0:
            return []
        return [int(x) % self.modulus for x in self.entries.dot(vec)]

    def kernel(self):
        return howell_kernel(self)

    def __repr__(self):
        return f"ResidueMatrix(mod {self.modulus}, {self.rows}x{self.cols})"


# ----------------------------------------------------------
def howell_form(rows, modulus):
    """Howell normal form of the row span of ``rows`` over Z/p^k.

    Returns the nonzero rows as lists of ints. Pivots are exact powers of
    p, entries above a pivot p^e are reduced mod p^e, and every element of
    the span vanishing on the first c columns is generated by the rows
    whose pivot lies at or after column c.
    """
    p, k = prime_power_parts(modulus)
    pool = [[int(x) % modulus for x in row] for row in rows]
    pool = [row for row in pool if any(row)]
    ncols = len(rows[0]) if len(rows) else 0
    basis = []
    for col in range(ncols):
        best, best_e = None, None
        for idx, row in enumerate(pool):
            if row[col]:
                e = valuation_int(row[col], p)
                if best is None or e < best_e:
                    best, best_e = idx, e
        if best is None:
            continue
        pivot = pool.pop(best)
        pe = p**best_e
        inverse = pow(pivot[col] // pe, -1, modulus)
        pivot = [x * inverse % modulus for x in pivot]
        remaining = []
        for row in pool:
            if row[col]:
                c = row[col] // pe
                row = [(a - c * b) % modulus for a, b in zip(row, pivot)]
            if any(row):
                remaining.append(row)
        if best_e > 0:
            saturated = [x * p ** (k - best_e) % modulus for x in pivot]
            if any(saturated):
                remaining.append(saturated)
        pool = remaining
        basis.append((col, pe, pivot))

    # reduce entries above each pivot
    for i in range(len(basis)):
        col, pe, pivot = basis[i]
        for j in range(i):
            upper = basis[j][2]
            c = upper[col] // pe
            if c:
                basis[j] = (
                    basis[j][0],
                    basis[j][1],
                    [(a - c * b) % modulus for a, b in zip(upper, pivot)],
                )
    return [row for _, _, row in basis]


def pivot_of(row, p):
    """(column, p^e) of the leading entry of a Howell row"""
    for col, x in enumerate(row):
        if x:
            return col, p ** valuation_int(x, p)
    return None, None


def span_contains(rows, vector, modulus):
    """Membership of ``vector`` in the Z/p^k span of ``rows``"""
    p, _ = prime_power_parts(modulus)
    vec = [int(x) % modulus for x in vector]
    for row in howell_form(rows, modulus):
        col, pe = pivot_of(row, p)
        if vec[col] % pe:
            return False
        c = vec[col] // pe
        if c:
            vec = [(a - c * b) % modulus for a, b in zip(vec, row)]
    return not any(vec)


def span_order(rows, modulus):
    """Number of elements of the Z/p^k span of ``rows``"""
    p, k = prime_power_parts(modulus)
    order = 1
    for row in howell_form(rows, modulus):
        _, pe = pivot_of(row, p)
        order *= modulus // pe
    return order


def howell_kernel(matrix):
    """Generators (in Howell form) of {v : M v = 0} over Z/p^k"""
    m, n = matrix.rows, matrix.cols
    modulus = matrix.modulus
    if n == 0:
        return []
    augmented = []
    for j in range(n):
        column = [int(matrix.entries[i, j]) for i in range(m)]
        unit = [1 if i == j else 0 for i in range(n)]
        augmented.append(column + unit)
    kernel = [row[m:] for row in howell_form(augmented, modulus) if not any(row[:m])]
    return howell_form(kernel, modulus) if kernel else []


# ----------------------------------------------------------
def kronecker(D, n):
    """Kronecker symbol (D|n)"""
    D, n = int(D), int(n)
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5) and twos % 2:
            result = -result
    if n == 1:
        return result
    return result * jacobi_symbol(D % n, n)


def rat_to_str(x):
    """Exact string form of a rational: "n" or "num/den" """
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rat_from_str(text):
    return Fraction(str(text).strip())
