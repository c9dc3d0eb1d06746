# -*- coding: utf-8 -*-
"""Level one modular forms as truncated q-expansions.

Bernoulli numbers follow the convention B_2 = 1/6, B_4 = -1/30 so that

    E_t(q) = 1 - (2t / B_t) * sum_{i >= 1} sigma_{t-1}(i) q^i

holds verbatim. Forms with poles at the cusp (elements of M_*[1/Delta])
are never inverted as power series; a WeightedForm of pole order m keeps
the holomorphic series Delta^m * f instead.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
import logging
import threading

from sympy import divisor_sigma

from taf_arithmetic.exact_arith import (
    INFINITY,
    prime_power_parts,
    rat_from_str,
    rat_to_str,
    valuation_int,
)
from taf_arithmetic.exceptions import PreconditionError, PrecisionError

logger = logging.getLogger(__name__)

_LOCK = threading.Lock()
_BERNOULLI = [Fraction(1)]
_EISENSTEIN = {}


# ----------------------------------------------------------
def bernoulli(t):
    """B_t from the recurrence sum_{k<=t} C(t+1, k) B_k = 0"""
    if t < 0:
        raise PreconditionError("bernoulli index must be nonnegative")
    table = _BERNOULLI
    if t < len(table):
        return table[t]
    with _LOCK:
        table = list(_BERNOULLI)
        for n in range(len(table), t + 1):
            total = sum(comb(n + 1, k) * table[k] for k in range(n))
            table.append(-total / (n + 1))
        _BERNOULLI[:] = table
    return table[t]


def sigma(k, i):
    """sum of d^k over the divisors d of i"""
    if i < 1:
        raise PreconditionError("sigma needs i >= 1")
    return int(divisor_sigma(i, k))


# ----------------------------------------------------------
@dataclass(frozen=True)
class QSeries:
    """Truncated q-expansion, coefficients of q^0 .. q^(precision-1).

    ``modulus`` is None for rational coefficients (Fractions), otherwise
    the prime power p^k and the coefficients are ints in [0, p^k).
    """

    coefficients: tuple
    modulus: int = None

    def __post_init__(self):
        if self.modulus is None:
            coeffs = tuple(Fraction(c) for c in self.coefficients)
        else:
            prime_power_parts(self.modulus)
            coeffs = tuple(int(c) % self.modulus for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def precision(self):
        return len(self.coefficients)

    @property
    def is_rational(self):
        return self.modulus is None

    def __getitem__(self, i):
        return self.coefficients[i]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def _align(self, other):
        if isinstance(other, QSeries):
            if other.modulus != self.modulus:
                raise PreconditionError("series over different coefficient rings")
            n = min(self.precision, other.precision)
            return n, other.coefficients[:n]
        n = self.precision
        return n, (other,) + (0,) * (n - 1)

    def __add__(self, other):
        n, theirs = self._align(other)
        return QSeries(
            tuple(a + b for a, b in zip(self.coefficients[:n], theirs)), self.modulus
        )

    __radd__ = __add__

    def __neg__(self):
        return QSeries(tuple(-a for a in self.coefficients), self.modulus)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return QSeries(tuple(a * other for a in self.coefficients), self.modulus)
        n, theirs = self._align(other)
        mine = self.coefficients[:n]
        out = [0] * n
        for i, a in enumerate(mine):
            if not a:
                continue
            for j in range(n - i):
                b = theirs[j]
                if b:
                    out[i + j] += a * b
        return QSeries(tuple(out), self.modulus)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        result = self.one(self.precision, self.modulus)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    @staticmethod
    def one(prec, modulus=None):
        return QSeries((1,) + (0,) * (prec - 1), modulus)

    def truncate(self, prec):
        if prec > self.precision:
            raise PrecisionError(
                f"cannot extend a series of precision {self.precision} to {prec}"
            )
        return QSeries(self.coefficients[:prec], self.modulus)

    def reduce_mod(self, modulus):
        """Image in (Z/modulus)[[q]]; needs p-integral coefficients"""
        p, _ = prime_power_parts(modulus)
        if self.modulus is not None:
            if self.modulus % modulus:
                raise PreconditionError(
                    f"cannot reduce mod {modulus} from mod {self.modulus}"
                )
            return QSeries(self.coefficients, modulus)
        coeffs = []
        for c in self.coefficients:
            if c.denominator % p == 0:
                raise PreconditionError(f"coefficient {c} is not {p}-integral")
            coeffs.append(c.numerator * pow(c.denominator, -1, modulus))
        return QSeries(tuple(coeffs), modulus)

    def order(self):
        """index of the first nonzero coefficient, INFINITY if none"""
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        return INFINITY

    def is_zero(self):
        return self.order() is INFINITY

    def content_valuation(self, p):
        """min nu_p over the coefficients"""
        best = INFINITY
        for c in self.coefficients:
            if c:
                c = Fraction(c)
                v = valuation_int(c.numerator, p) - valuation_int(c.denominator, p)
                best = min(best, v)
        return best

    def to_json(self):
        return {
            "coefficients": [rat_to_str(c) for c in self.coefficients],
            "precision": self.precision,
            "modulus": self.modulus,
        }

    @classmethod
    def from_json(cls, data):
        coeffs = [rat_from_str(c) for c in data["coefficients"]]
        if int(data["precision"]) != len(coeffs):
            raise PreconditionError("precision field does not match coefficients")
        modulus = data.get("modulus")
        if modulus is not None:
            coeffs = [int(c) for c in coeffs]
        return cls(tuple(coeffs), modulus)


# ----------------------------------------------------------
def eisenstein(t, prec):
    """q-expansion of E_t to the given precision (memoized)"""
    if t % 2 or t < 4:
        raise PreconditionError(f"E_t needs an even weight t >= 4, got {t}")
    if prec < 1:
        raise PreconditionError("precision must be positive")
    cached = _EISENSTEIN.get(t)
    if cached is not None and cached.precision >= prec:
        return cached.truncate(prec)
    factor = -Fraction(2 * t) / bernoulli(t)
    coeffs = [Fraction(1)] + [factor * sigma(t - 1, i) for i in range(1, prec)]
    series = QSeries(tuple(coeffs))
    with _LOCK:
        current = _EISENSTEIN.get(t)
        if current is None or current.precision < prec:
            _EISENSTEIN[t] = series
    return series


def remember_eisenstein(t, series):
    """Seed the memo with a precomputed E_t (e.g. read from disk)"""
    with _LOCK:
        current = _EISENSTEIN.get(t)
        if current is None or current.precision < series.precision:
            _EISENSTEIN[t] = series


def delta(prec):
    """Delta = (E_4^3 - E_6^2) / 1728"""
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    return (e4**3 - e6**2) * Fraction(1, 1728)


def verschiebung(f, ell):
    """V_ell f(q) = f(q^ell), keeping the precision of f"""
    n = f.precision
    coeffs = [0] * n
    for i in range(0, (n - 1) // ell + 1):
        coeffs[i * ell] = f.coefficients[i]
    return QSeries(tuple(coeffs), f.modulus)


def level_eisenstein(ell, prec):
    """E_2(q) - ell E_2(q^ell), holomorphic of weight 2 on Gamma_0(ell)"""
    if prec < 1:
        raise PreconditionError("precision must be positive")
    e2 = QSeries(tuple([1] + [-24 * sigma(1, i) for i in range(1, prec)]))
    return e2 - verschiebung(e2, ell) * ell


def eisenstein_power_congruence(p, k, prec):
    """True iff E_{p-1}^{p^(k-1)} == 1 mod p^k up to prec"""
    series = eisenstein(p - 1, prec).reduce_mod(p**k) ** (p ** (k - 1))
    return (series - 1).is_zero()


# ----------------------------------------------------------
@dataclass(frozen=True)
class WeightedForm:
    """f in M_weight[1/Delta] stored as the holomorphic Delta^pole_order * f"""

    weight: int
    pole_order: int
    series: QSeries
    label: str = ""

    def __post_init__(self):
        if self.pole_order < 0:
            raise PreconditionError("pole order must be nonnegative")
        if self.weight % 2:
            raise PreconditionError("level one forms have even weight")

    @property
    def cleared_weight(self):
        return self.weight + 12 * self.pole_order

    def raise_pole_order(self, m):
        """Same form, stored with pole order m >= pole_order"""
        if m < self.pole_order:
            raise PreconditionError("cannot lower the pole order")
        extra = m - self.pole_order
        series = self.series
        if extra:
            series = series * delta(series.precision) ** extra
        return WeightedForm(self.weight, m, series, self.label)


@dataclass
class MonomialBasis:
    """Spanning set E4^a E6^b Delta^c of weight t, c >= -m_max.

    ``series[i]`` is the expansion of Delta^m_max times the i-th monomial,
    so all entries share the cleared weight t + 12 m_max.
    """

    weight: int
    m_max: int
    exponents: list = field(default_factory=list)
    series: list = field(default_factory=list)

    def __len__(self):
        return len(self.exponents)

    def forms(self):
        return [
            WeightedForm(self.weight, self.m_max, s, monomial_label(e))
            for e, s in zip(self.exponents, self.series)
        ]


def monomial_label(exponents):
    a, b, c = exponents
    parts = []
    if a:
        parts.append("E4" if a == 1 else f"E4^{a}")
    if b:
        parts.append("E6" if b == 1 else f"E6^{b}")
    if c:
        parts.append("Delta" if c == 1 else f"Delta^{c}")
    return "*".join(parts) or "1"


def monomial_exponents(t, m_max):
    """(a, b, c) with 4a + 6b + 12c = t, a, b >= 0 and c >= -m_max"""
    if t % 2:
        return []
    triples = []
    c = -m_max
    while 12 * c <= t:
        rest = t - 12 * c
        for b in range(rest // 6 + 1):
            if (rest - 6 * b) % 4 == 0:
                triples.append(((rest - 6 * b) // 4, b, c))
        c += 1
    return sorted(triples, key=lambda e: (e[2], e[1], e[0]))


def basis_of_weight(t, m_max, prec):
    """Spanning set of M_t[1/Delta] with pole order at most m_max"""
    if prec < 1:
        raise PreconditionError("precision must be positive")
    if m_max < 0:
        raise PreconditionError("m_max must be nonnegative")
    basis = MonomialBasis(t, m_max)
    e4 = eisenstein(4, prec)
    e6 = eisenstein(6, prec)
    d = delta(prec)
    for a, b, c in monomial_exponents(t, m_max):
        basis.exponents.append((a, b, c))
        basis.series.append(e4**a * e6**b * d ** (c + m_max))
    logger.debug("weight %s, m_max %s: %s monomials", t, m_max, len(basis))
    return basis
