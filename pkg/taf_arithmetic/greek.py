# -*- coding: utf-8 -*-
"""Greek letter bookkeeping: the norm ||I||, stems, and the closed-form
existence predicates for the invariants x_{i/j} (chromatic level one) and
x_{i/j,k} (chromatic level two).

Degrees follow the BP convention |v_k| = 2(p^k - 1).
"""

from dataclasses import dataclass, field
from fractions import Fraction
import logging

from taf_arithmetic import modforms
from taf_arithmetic.exact_arith import require_prime, val_p, valuation_int
from taf_arithmetic.exceptions import PreconditionError

logger = logging.getLogger(__name__)


def v_degree(p, k):
    """|v_k| = 2(p^k - 1)"""
    return 2 * (p**k - 1)


@dataclass(frozen=True)
class GreekIndex:
    """I = (i_0, ..., i_n) at the prime p"""

    p: int
    n: int
    exponents: tuple

    def __post_init__(self):
        require_prime(self.p)
        if self.n < 1:
            raise PreconditionError("chromatic level must be at least 1")
        if len(self.exponents) != self.n + 1:
            got = len(self.exponents)
            raise PreconditionError(
                f"level {self.n} needs {self.n + 1} exponents, got {got}"
            )
        if any(i < 1 for i in self.exponents):
            raise PreconditionError("exponents must be positive")
        object.__setattr__(self, "exponents", tuple(int(i) for i in self.exponents))


@dataclass
class InvariantVerdict:
    """Outcome of an existence predicate"""

    exists: bool
    order: int = None
    t: int = None
    m: int = None
    flags: list = field(default_factory=list)

    def to_json(self):
        return {
            "exists": self.exists,
            "order": self.order,
            "t": self.t,
            "m": self.m,
            "flags": list(self.flags),
        }

    def describe(self):
        if self.exists:
            return f"exists, order {self.order}"
        return "does not exist"


# ----------------------------------------------------------
def norm_I(idx):
    """||I|| = i_1|v_1| + ... + i_{n-1}|v_{n-1}| + n"""
    total = sum(idx.exponents[k] * v_degree(idx.p, k) for k in range(1, idx.n))
    return total + idx.n


def greek_stem(idx, s):
    """Stem i_n s |v_n| - ||I|| of the Greek letter composite"""
    return idx.exponents[idx.n] * s * v_degree(idx.p, idx.n) - norm_I(idx)


def alpha_invariant_order(p, t, j):
    """x_{i/j} exists (of order p^j) iff t = (p-1)i and j <= nu_p(i) + 1"""
    require_prime(p)
    if p == 2:
        raise PreconditionError("the level one predicate assumes p > 2")
    if t == 0:
        raise PreconditionError("t must be nonzero")
    if j < 1:
        raise PreconditionError("j must be positive")
    if t % (p - 1):
        return InvariantVerdict(False, t=t)
    i = t // (p - 1)
    if j <= valuation_int(i, p) + 1:
        return InvariantVerdict(True, order=p**j, t=t)
    return InvariantVerdict(False, t=t)


def alpha_max_order(p, t):
    """Largest j with x_{i/j} in degree t, 0 if none"""
    if alpha_invariant_order(p, t, 1).exists:
        return valuation_int(t // (p - 1), p) + 1
    return 0


def bernoulli_order(p, t):
    """nu_p of the denominator of B_t / t"""
    if t < 1:
        raise PreconditionError("t must be positive")
    ratio = modforms.bernoulli(t) / t
    if ratio == 0:
        return 0
    return max(0, -val_p(ratio, p))


# ----------------------------------------------------------
def _bracket(p, nu, m):
    return Fraction(p) ** (nu - m) + Fraction(p) ** (nu - m - 1) - 1


def bracket_index(p, nu, j):
    """The unique integer m with U(m+1) < j <= U(m),
    U(m) = p^(nu-m) + p^(nu-m-1) - 1"""
    m = 0
    while j > _bracket(p, nu, m):
        m -= 1
    while j <= _bracket(p, nu, m + 1):
        m += 1
    return m


def beta_invariant_exists(p, i, j, k):
    """Literal evaluation of the three conditions for x_{i/j,k}"""
    require_prime(p)
    if p <= 3:
        raise PreconditionError("the level two predicate assumes p > 3")
    if min(i, j, k) < 1:
        raise PreconditionError("i, j and k must be positive")
    t = (p**2 - 1) * i - (p - 1) * j
    nu = valuation_int(i, p)
    verdict = InvariantVerdict(False, t=t)

    if nu == 0:
        if j != 1:
            return verdict
    elif not 1 <= j <= p**nu + p ** (nu - 1) - 1:
        return verdict

    m = bracket_index(p, nu, j)
    verdict.m = m
    if nu == 0:
        verdict.flags.append("nu-zero-literal")
        logger.info(
            "p=%s i=%s j=%s: nu_p(i)=0 brackets m=%s, literal bound k <= %s",
            p,
            i,
            j,
            m,
            m + 1,
        )
    if k <= min(valuation_int(j, p) + 1, m + 1):
        verdict.exists = True
        verdict.order = p**k
    return verdict
