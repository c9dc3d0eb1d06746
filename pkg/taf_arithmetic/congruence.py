# -*- coding: utf-8 -*-
"""Congruence groups of level one modular forms over Z/p^j.

Everything is reduced to one linear system per query: the unknowns are
coordinates on monomial spanning sets, each unknown contributes one
q-expansion per defining condition, and the solutions are the Howell
kernel of the stacked coefficient matrix. Forms with poles are handled in
cleared form (Delta^m f), so condition (ii) is multiplied through by
Delta^m V(Delta)^m before comparing coefficients.

On the level ell side the lower weight forms g of B_(t;j,k) are spanned by
F^x E4^a E6^b with F = E_2 - ell V_ell(E_2), together with the old forms
h(q) and h(q^ell). For ell = 2 and p > 3 this is all of M_*(Gamma_0(2)).
"""

from dataclasses import dataclass, field
import logging
import math

import pandas as pd

from taf_arithmetic import greek
from taf_arithmetic.config import DEFAULT_MMAX
from taf_arithmetic.exact_arith import (
    INFINITY,
    ResidueMatrix,
    howell_form,
    howell_kernel,
    require_prime,
    span_contains,
    span_order,
    valuation_int,
)
from taf_arithmetic.exceptions import PreconditionError, PrecisionError
from taf_arithmetic.modforms import (
    QSeries,
    WeightedForm,
    delta,
    eisenstein,
    level_eisenstein,
    monomial_exponents,
    monomial_label,
    verschiebung,
)

logger = logging.getLogger(__name__)

WITNESS_FOUND = "witness-found"
NO_WITNESS = "no-witness-in-old-subspace"


@dataclass
class CongruenceGroup:
    """Finite stage of A_(t;j) (k is None) or of B_(t;j,k)"""

    p: int
    ell: int
    t: int
    j: int
    modulus: int
    m_max: int
    prec: int
    k: int = None
    generators: list = field(default_factory=list)
    orders: list = field(default_factory=list)
    coordinates: list = field(default_factory=list)
    order: int = 1
    verdict: str = None

    @property
    def exponent(self):
        return max(self.orders, default=1)

    @property
    def is_trivial(self):
        return self.order == 1

    def to_json(self):
        return {
            "p": self.p,
            "ell": self.ell,
            "t": self.t,
            "j": self.j,
            "k": self.k,
            "modulus": self.modulus,
            "m_max": self.m_max,
            "exponent": self.exponent,
            "order": self.order,
            "orders": list(self.orders),
            "generators": [dict(c) for c in self.coordinates],
            "verdict": self.verdict,
            "prec": self.prec,
        }


# ----------------------------------------------------------
def sturm_bound(t, ell, m_max):
    """Coefficients needed to certify a congruence at level Gamma_0(ell)"""
    return math.ceil((t + 12 * m_max) * (ell + 1) / 12) + 1


def working_precision(t, ell, m_max, prec=None):
    """Precision actually used: condition (ii) is cleared to weight t + 24 m"""
    if prec is not None and prec < sturm_bound(t, ell, m_max):
        raise PrecisionError(
            f"prec={prec} is below the bound {sturm_bound(t, ell, m_max)} "
            f"for t={t}, ell={ell}, m_max={m_max}"
        )
    cleared = math.ceil((t + 24 * m_max) * (ell + 1) / 12) + 1
    return max(prec or 0, cleared)


def _check_primes(p, ell):
    require_prime(p)
    require_prime(ell, "ell")
    if p <= 3:
        raise PreconditionError("congruence groups need p > 3")
    if ell == p:
        raise PreconditionError("ell must differ from p")


class _Ring:
    """E4, E6, Delta and E_2 - ell V(E_2) mod p^k at one precision"""

    def __init__(self, modulus, prec, ell, m_max):
        self.modulus = modulus
        self.prec = prec
        self.e4 = eisenstein(4, prec).reduce_mod(modulus)
        self.e6 = eisenstein(6, prec).reduce_mod(modulus)
        self.delta = delta(prec).reduce_mod(modulus)
        self.level_e2 = level_eisenstein(ell, prec).reduce_mod(modulus)
        self.delta_m = self.delta**m_max
        self.v_delta_m = verschiebung(self.delta, ell) ** m_max
        self._tables = {}

    def _power(self, name, exponent):
        table = self._tables.setdefault(name, [QSeries.one(self.prec, self.modulus)])
        while len(table) <= exponent:
            table.append(table[-1] * getattr(self, name))
        return table[exponent]

    def cleared_basis(self, t, m_max, reduced=False):
        """(exponents, Delta^m_max * E4^a E6^b Delta^c) for weight t.

        ``reduced`` keeps b <= 1, which spans the same Z_(p)-module since
        E6^2 = E4^3 - 1728 Delta.
        """
        exponents = monomial_exponents(t, m_max)
        if reduced:
            exponents = [e for e in exponents if e[1] <= 1]
        power = self._power
        series = [
            power("e4", a) * power("e6", b) * power("delta", c + m_max)
            for a, b, c in exponents
        ]
        return exponents, series

    def level_basis(self, weight):
        """F^x E4^a E6^b (b <= 1) of the given weight on Gamma_0(ell)"""
        series = []
        for x in range(weight // 2 + 1):
            rest = weight - 2 * x
            if rest % 4 == 0:
                a, b = rest // 4, 0
            elif rest >= 6:
                a, b = (rest - 6) // 4, 1
            else:
                continue
            series.append(
                self._power("level_e2", x) * self._power("e4", a) * self._power("e6", b)
            )
        return series


def _condition_two(ring, ell, t, series):
    """Cleared ell^t V(f) - f"""
    return (
        verschiebung(series, ell) * ring.delta_m * pow(ell, t, ring.modulus)
        - series * ring.v_delta_m
    )


def _solve(columns, images, modulus, prec):
    """Howell kernel of sum z_u columns[u] == 0, using prec coefficients of
    every condition. Returns Howell rows [image | z] with nonzero image."""
    rows = []
    for c in range(len(columns[0])):
        for r in range(prec):
            row = [col[c][r] for col in columns]
            if any(row):
                rows.append(row)
    if not rows:
        rows = [[0] * len(columns)]
    kernel = howell_kernel(ResidueMatrix(modulus, rows))
    logger.debug(
        "system mod %s: %s equations, %s unknowns, kernel rank %s",
        modulus,
        len(rows),
        len(columns),
        len(kernel),
    )
    augmented = []
    for z in kernel:
        image = [0] * prec
        for u, coeff in enumerate(z):
            if coeff and images[u] is not None:
                for r in range(prec):
                    image[r] += coeff * images[u][r]
        augmented.append(image + list(z))
    if not augmented:
        return []
    return [row for row in howell_form(augmented, modulus) if any(row[:prec])]


def _verify(columns, z, modulus):
    """Re-substitute a solution at the full precision of the columns"""
    for c in range(len(columns[0])):
        total = None
        for u, coeff in enumerate(z):
            if coeff:
                term = columns[u][c] * coeff
                total = term if total is None else total + term
        if total is not None and not total.is_zero():
            raise PrecisionError(
                f"generator fails condition {c + 1} mod {modulus} at "
                f"precision {total.precision}"
            )


def _series_order(coefficients, p, modulus):
    v = min(
        (valuation_int(c, p) for c in coefficients if c % modulus), default=INFINITY
    )
    if v is INFINITY:
        return 1
    return modulus // p**v


def _coordinates(exponents, z):
    return {monomial_label(e): int(c) for e, c in zip(exponents, z) if c}


def _label(coords):
    terms = [lab if c == 1 else f"{c}*{lab}" for lab, c in coords.items()]
    return " + ".join(terms) or "0"


# ----------------------------------------------------------
def compute_A(p, ell, t, j, m_max=DEFAULT_MMAX, prec=None):
    """A_(t;j): f with (ell^t - 1) f == 0 and ell^t V_ell(f) - f == 0 mod p^j"""
    _check_primes(p, ell)
    if j < 1:
        raise PreconditionError("j must be positive")
    modulus = p**j
    prec = working_precision(t, ell, m_max, prec)
    group = CongruenceGroup(p, ell, t, j, modulus, m_max, prec)
    if t % 2 or not monomial_exponents(t, m_max):
        logger.info("A(t=%s; j=%s) mod %s: no forms of this weight", t, j, modulus)
        return group

    ring = _Ring(modulus, 2 * prec, ell, m_max)
    exponents, basis = ring.cleared_basis(t, m_max)
    scale = pow(ell, t, modulus) - 1
    columns = [(s * scale, _condition_two(ring, ell, t, s)) for s in basis]

    for row in _solve(columns, basis, modulus, prec):
        image, z = row[:prec], row[prec:]
        _verify(columns, z, modulus)
        coords = _coordinates(exponents, z)
        group.generators.append(
            WeightedForm(t, m_max, QSeries(tuple(image), modulus), _label(coords))
        )
        group.orders.append(_series_order(image, p, modulus))
        group.coordinates.append(coords)
    group.order = span_order([list(g.series) for g in group.generators], modulus)
    logger.info(
        "A(t=%s; j=%s) at p=%s, ell=%s: order %s, exponent %s",
        t,
        j,
        p,
        ell,
        group.order,
        group.exponent,
    )
    return group


def compute_B(p, ell, t, j, k, m_max=DEFAULT_MMAX, prec=None):
    """B_(t;j,k): f of weight t modulo weight t - j forms, with

    (i)  (ell^t - 1) f == h      h of weight t - j, level 1
    (ii) ell^t V_ell(f) - f == g  g of weight t - j on Gamma_0(ell)

    mod p^k. A witness is a generator whose reduction mod p is not the
    q-expansion of a form of weight t - (p - 1); such an element has order
    exactly p^k and is not divisible by the Hasse invariant.
    """
    _check_primes(p, ell)
    if j < 1 or k < 1:
        raise PreconditionError("j and k must be positive")
    step = (p - 1) * p ** (k - 1)
    if j % step:
        raise PreconditionError(f"j={j} is not divisible by (p-1)p^(k-1)={step}")
    modulus = p**k
    prec = working_precision(t, ell, m_max, prec)
    group = CongruenceGroup(p, ell, t, j, modulus, m_max, prec, k=k, verdict=NO_WITNESS)
    if t % 2 or not monomial_exponents(t, m_max):
        logger.info("B(t=%s; j=%s, k=%s): no forms of this weight", t, j, k)
        return group

    ring = _Ring(modulus, 2 * prec, ell, m_max)
    exponents, basis = ring.cleared_basis(t, m_max, reduced=True)
    _, lower = ring.cleared_basis(t - j, m_max, reduced=True)
    _, top = ring.cleared_basis(t - (p - 1), m_max, reduced=True)
    level = ring.level_basis(t - j + 24 * m_max)
    zero = QSeries.one(2 * prec, modulus) * 0
    scale = pow(ell, t, modulus) - 1

    columns = [(s * scale, _condition_two(ring, ell, t, s)) for s in basis]
    columns += [(zero, -g) for g in level]
    columns += [(zero, -(h * ring.v_delta_m)) for h in lower]
    columns += [(zero, -(verschiebung(h, ell) * ring.delta_m)) for h in lower]
    columns += [(-h, zero) for h in lower]
    images = list(basis) + [None] * (len(columns) - len(basis))

    lower_rows = [list(h.coefficients[:prec]) for h in lower]
    lower_order = span_order(lower_rows, modulus) if lower_rows else 1
    top_rows = [[c % p for c in h.coefficients[:prec]] for h in top]
    candidates = _solve(columns, images, modulus, prec)
    quotient_rows = list(lower_rows)
    leading = False
    for row in candidates:
        image, z = row[:prec], row[prec:]
        _verify(columns, z, modulus)
        order = _quotient_order(image, lower_rows, p, modulus)
        if order == 1:
            continue
        coords = _coordinates(exponents, z[: len(basis)])
        group.generators.append(
            WeightedForm(t, m_max, QSeries(tuple(image), modulus), _label(coords))
        )
        group.orders.append(order)
        group.coordinates.append(coords)
        quotient_rows.append(image)
        leading = leading or _is_leading(image, top_rows, p)
    if group.generators:
        group.order = span_order(quotient_rows, modulus) // lower_order
    if leading:
        group.verdict = WITNESS_FOUND
    logger.info(
        "B(t=%s; j=%s, k=%s) at p=%s, ell=%s: %s, order %s",
        t,
        j,
        k,
        p,
        ell,
        group.verdict,
        group.order,
    )
    return group


def _is_leading(image, top_rows, p):
    """image mod p is not a form of weight t - (p - 1)"""
    reduced = [x % p for x in image]
    if not any(reduced):
        return False
    return not (top_rows and span_contains(top_rows, reduced, p))


def _quotient_order(image, lower_rows, p, modulus):
    """Order of image in the quotient by the span of lower_rows"""
    order = 1
    current = list(image)
    while any(x % modulus for x in current):
        if lower_rows and span_contains(lower_rows, current, modulus):
            break
        current = [x * p for x in current]
        order *= p
    return order


# ----------------------------------------------------------
def serre_congruence_check(f1, f2, p, k):
    """Check both conclusions of Serre's theorem for f1 == f2 mod p^k.

    Returns 'consistent', 'weight-violation' or 'congruence-violation'.
    """
    require_prime(p)
    if p <= 3:
        raise PreconditionError("the Hasse invariant lifts to E_{p-1} only for p > 3")
    if k < 1:
        raise PreconditionError("k must be positive")
    modulus = p**k
    m = max(f1.pole_order, f2.pole_order)
    f1, f2 = f1.raise_pole_order(m), f2.raise_pole_order(m)
    if f1.weight > f2.weight:
        f1, f2 = f2, f1
    first = f1.series.reduce_mod(modulus)
    second = f2.series.reduce_mod(modulus)
    if not (first - second).is_zero():
        raise PreconditionError(f"the q-expansions are not congruent mod {modulus}")

    difference = f2.weight - f1.weight
    if difference % ((p - 1) * p ** (k - 1)):
        logger.info("weights %s, %s differ by %s", f1.weight, f2.weight, difference)
        return "weight-violation"
    hasse = eisenstein(p - 1, first.precision).reduce_mod(modulus)
    lifted = first * hasse ** (difference // (p - 1))
    if not (lifted - second).is_zero():
        return "congruence-violation"
    return "consistent"


# ----------------------------------------------------------
def beta_cross_validation(p, ell=2, i_max=1, k=1, m_max=DEFAULT_MMAX):
    """Compare the closed-form predicate for x_{i/j,k} with compute_B at
    t = (p^2 - 1) i and lower weight t - (p - 1) j.

    Returns a pandas DataFrame, one row per (i, j).
    """
    records = []
    for i in range(1, i_max + 1):
        nu = valuation_int(i, p)
        j_top = 1 if nu == 0 else p**nu + p ** (nu - 1) - 1
        for j in range(1, j_top + 1):
            predicted = greek.beta_invariant_exists(p, i, j, k)
            t = (p**2 - 1) * i
            lowered = (p - 1) * j
            try:
                found = compute_B(p, ell, t, lowered, k, m_max=m_max).verdict
            except PreconditionError as e:
                logger.debug("skipping i=%s j=%s: %s", i, j, e)
                found = "precondition"
            agree = (found == WITNESS_FOUND) == predicted.exists
            records.append(
                {
                    "i": i,
                    "nu": nu,
                    "j": j,
                    "k": k,
                    "t": t,
                    "lowered_by": lowered,
                    "predicate": predicted.describe(),
                    "congruence": found,
                    "agree": agree,
                }
            )
            log = logger.info if agree else logger.warning
            log(
                "beta i=%s (nu=%s) j=%s k=%s: predicate %s, congruence %s",
                i,
                nu,
                j,
                k,
                predicted.describe(),
                found,
            )
    return pd.DataFrame.from_records(
        records,
        columns=[
            "i",
            "nu",
            "j",
            "k",
            "t",
            "lowered_by",
            "predicate",
            "congruence",
            "agree",
        ],
    )
