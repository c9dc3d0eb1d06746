# -*- coding: utf-8 -*-
"""Hermitian forms over an imaginary quadratic field F = Q(delta),
delta^2 = d, and their local and global invariants.

Local classes live in Q_x^* / N(F_x^*), which is represented by the sign
of the Hilbert symbol (a, d)_x. Forms are diagonal with rational entries;
the discriminant is the product of the entries.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count
import logging

from sympy import factorint, isprime, legendre_symbol, primerange

from taf_arithmetic.exact_arith import (
    kronecker,
    require_prime,
    unit_part,
    valuation_int,
)
from taf_arithmetic.exceptions import BudgetExceeded, PreconditionError

logger = logging.getLogger(__name__)

INF = "inf"


def _squarefree(n):
    return all(e == 1 for e in factorint(abs(n)).values())


@dataclass(frozen=True)
class QuadImagField:
    d: int

    def __post_init__(self):
        if self.d >= 0 or not _squarefree(self.d):
            raise PreconditionError(f"d={self.d} is not a negative squarefree integer")

    @property
    def D(self):
        return self.d if self.d % 4 == 1 else 4 * self.d

    def splitting(self, ell):
        """'split', 'inert' or 'ramified' for a rational prime ell"""
        symbol = kronecker(self.D, ell)
        return {1: "split", -1: "inert", 0: "ramified"}[symbol]

    def ramified_primes(self):
        return sorted(int(q) for q in factorint(abs(self.D)))


@dataclass(frozen=True)
class LocalFormClass:
    """kind: 'split-trivial', 'nonsplit' (value in {0, 1}) or 'signature'
    (value (p, q))"""

    place: object
    kind: str
    value: object = 0

    def xi(self):
        """Contribution to the sum map onto Z/2"""
        if self.kind == "split-trivial":
            return 0
        if self.kind == "nonsplit":
            return int(self.value) % 2
        return self.value[1] % 2

    def to_json(self):
        value = list(self.value) if self.kind == "signature" else self.value
        return {"place": self.place, "kind": self.kind, "value": value}

    @classmethod
    def from_json(cls, data):
        value = data.get("value", 0)
        if data["kind"] == "signature":
            value = tuple(value)
        return cls(data["place"], data["kind"], value)


@dataclass
class GlobalFormSpec:
    field: QuadImagField
    n: int
    local: list = field(default_factory=list)

    def signature(self):
        for entry in self.local:
            if entry.kind == "signature":
                return entry.value
        raise PreconditionError("global data needs a signature at infinity")

    def to_json(self):
        return {
            "d": self.field.d,
            "n": self.n,
            "local": [entry.to_json() for entry in self.local],
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            QuadImagField(int(data["d"])),
            int(data["n"]),
            [LocalFormClass.from_json(x) for x in data["local"]],
        )


# ----------------------------------------------------------
def _integral(x):
    """Integer in the same square class as the nonzero rational x"""
    x = Fraction(x)
    if x == 0:
        raise PreconditionError("Hilbert symbols need nonzero arguments")
    return x.numerator * x.denominator


def hilbert_symbol(a, b, place):
    """Quadratic Hilbert symbol (a, b)_v for v a prime or INF"""
    a, b = _integral(a), _integral(b)
    if place == INF:
        return -1 if a < 0 and b < 0 else 1
    ell = require_prime(place, "place")
    alpha, beta = valuation_int(a, ell), valuation_int(b, ell)
    u, v = unit_part(a, ell), unit_part(b, ell)
    if ell == 2:
        eps_u, eps_v = (u - 1) // 2 % 2, (v - 1) // 2 % 2
        omega_u, omega_v = (u * u - 1) // 8 % 2, (v * v - 1) // 8 % 2
        exponent = eps_u * eps_v + alpha * omega_v + beta * omega_u
        return -1 if exponent % 2 else 1
    sign = -1 if (alpha * beta * (ell - 1) // 2) % 2 else 1
    if beta % 2:
        sign *= legendre_symbol(u % ell, ell)
    if alpha % 2:
        sign *= legendre_symbol(v % ell, ell)
    return sign


def support(*values):
    """Primes dividing numerators or denominators, plus 2"""
    primes = {2}
    for x in values:
        x = Fraction(x)
        primes.update(int(q) for q in factorint(abs(x.numerator)))
        primes.update(int(q) for q in factorint(x.denominator))
    return sorted(primes)


def is_local_norm(a, F, place):
    """a in N(F_x^*), via (a, d)_x = +1"""
    if Fraction(a) == 0:
        raise PreconditionError("zero is never a norm from F^*")
    if place != INF and F.splitting(place) == "split":
        return True
    return hilbert_symbol(a, F.d, place) == 1


def nontrivial_places(a, F):
    """Places where a is not a local norm"""
    places = [INF] + sorted(set(support(a)) | set(F.ramified_primes()))
    return [x for x in places if not is_local_norm(a, F, x)]


def norm_index(F, ell):
    """[Q_ell^* : N(F_ell^*)] counted on square-class representatives"""
    if F.splitting(ell) == "split":
        return 1
    if ell == 2:
        units = [1, 3, 5, 7]
    else:
        nonresidue = next(x for x in count(2) if legendre_symbol(x, ell) == -1)
        units = [1, nonresidue]
    reps = [u * ell**e for u in units for e in (0, 1)]
    norms = sum(1 for x in reps if hilbert_symbol(x, F.d, ell) == 1)
    return len(reps) // norms


# ----------------------------------------------------------
def pairing_translate(coords, direction, d):
    """Translate between the alternating datum beta (beta* = -beta) and the
    hermitian datum xi = 2 delta beta (xi* = xi); coordinates in {1, delta}"""
    x, y = (Fraction(c) for c in coords)
    if direction == "beta_to_xi":
        if x != 0:
            raise PreconditionError("beta must be purely imaginary")
        return (2 * d * y, Fraction(0))
    if direction == "xi_to_beta":
        if y != 0:
            raise PreconditionError("xi must be totally real")
        return (Fraction(0), x / (2 * d))
    raise PreconditionError(f"unknown direction {direction}")


def local_class_U(F, n, place, entries):
    """Class of the diagonal form diag(entries) in H^1(Q_x, U)"""
    entries = [Fraction(e) for e in entries]
    if len(entries) != n:
        raise PreconditionError(f"expected {n} diagonal entries")
    if any(e == 0 for e in entries):
        raise PreconditionError("degenerate diagonal entry")
    if place == INF:
        positive = sum(1 for e in entries if e > 0)
        return LocalFormClass(INF, "signature", (positive, n - positive))
    kind = F.splitting(place)
    if kind == "split":
        return LocalFormClass(place, "split-trivial")
    if kind == "ramified":
        index = norm_index(F, place)
        if index != 2:
            logger.warning("norm index %s at ramified place %s", index, place)
    disc = Fraction(1)
    for e in entries:
        disc *= e
    return LocalFormClass(place, "nonsplit", 0 if is_local_norm(disc, F, place) else 1)


def local_data_of_form(F, entries):
    """GlobalFormSpec of a global diagonal form: every nonsplit place in
    the support plus infinity"""
    n = len(entries)
    disc = Fraction(1)
    for e in entries:
        disc *= Fraction(e)
    places = sorted(set(support(disc)) | set(F.ramified_primes()))
    local = [local_class_U(F, n, INF, entries)]
    for ell in places:
        if F.splitting(ell) != "split":
            local.append(local_class_U(F, n, ell, entries))
    return GlobalFormSpec(F, n, local)


def _check_spec(spec):
    p, q = spec.signature()
    if p + q != spec.n or min(p, q) < 0:
        raise PreconditionError(f"signature ({p},{q}) does not match n={spec.n}")
    for entry in spec.local:
        if entry.kind == "nonsplit" and spec.field.splitting(entry.place) == "split":
            raise PreconditionError(f"place {entry.place} splits in F")


def global_exists_U(spec):
    """A global hermitian form with these local classes exists iff sum xi = 0"""
    _check_spec(spec)
    return sum(entry.xi() for entry in spec.local) % 2 == 0


@dataclass
class GUClassification:
    exists: bool
    invariant: tuple

    def to_json(self):
        return {"exists": self.exists, "invariant": list(self.invariant)}


def global_classify_GU(spec, n=None):
    """Similitude classes: n odd -> the unordered signature is a complete
    invariant; n even -> existence iff sum of xi' vanishes, xi'_inf = p mod 2"""
    n = spec.n if n is None else n
    if n != spec.n:
        raise PreconditionError("rank does not match the local data")
    _check_spec(spec)
    p, q = spec.signature()
    unordered = tuple(sorted((p, q)))
    if n % 2:
        return GUClassification(True, unordered)
    finite = sum(e.xi() for e in spec.local if e.kind == "nonsplit")
    classes = tuple(
        (e.place, int(e.value) % 2) for e in spec.local if e.kind == "nonsplit"
    )
    return GUClassification((finite + p) % 2 == 0, classes + (unordered,))


def gu_equivalent(first, second):
    """Same GU-similitude class (n odd: |signature|; n even: local classes)"""
    a, b = global_classify_GU(first), global_classify_GU(second)
    if first.n != second.n:
        return False
    if first.n % 2:
        return a.invariant == b.invariant
    nontrivial_a = {x for x in a.invariant[:-1] if x[1]}
    nontrivial_b = {x for x in b.invariant[:-1] if x[1]}
    return nontrivial_a == nontrivial_b and a.invariant[-1] == b.invariant[-1]


# ----------------------------------------------------------
def nonnorm_generator(F, ell):
    """Smallest integer a >= 2 generating Q_ell^* / N(F_ell^*)"""
    for a in range(2, 10**4):
        if hilbert_symbol(a, F.d, ell) == -1:
            return a
    raise BudgetExceeded(f"no non-norm found at {ell}")


def _antidiagonal(size):
    return [[1 if i + j == size - 1 else 0 for j in range(size)] for i in range(size)]


def _block(upper, lower):
    size = len(upper) + len(lower)
    out = [[0] * size for _ in range(size)]
    for i, row in enumerate(upper):
        out[i][: len(row)] = row
    shift = len(upper)
    for i, row in enumerate(lower):
        for j, x in enumerate(row):
            out[shift + i][shift + j] = x
    return out


def isotropy_table(F, ell, n):
    """Standard Gram matrices of rank n over F_ell by discriminant class.

    Returns a list of dicts {disc, gram, witt_index}: first the class
    disc = (-1)^(n//2), then the other class.
    """
    if F.splitting(ell) == "split":
        raise PreconditionError("the table covers nonsplit places only")
    a = nonnorm_generator(F, ell)
    standard_disc = (-1) ** (n // 2)
    if n % 2 == 0:
        rows = [
            (standard_disc, _antidiagonal(n), n // 2),
            (
                standard_disc * a,
                _block(_antidiagonal(n - 2), [[1, 0], [0, -a]]),
                (n - 2) // 2,
            ),
        ]
    else:
        rows = [
            (standard_disc, _block(_antidiagonal(n - 1), [[1]]), (n - 1) // 2),
            (standard_disc * a, _block(_antidiagonal(n - 1), [[a]]), (n - 1) // 2),
        ]
    return [{"disc": disc, "gram": gram, "witt_index": r} for disc, gram, r in rows]


def inert_primes(F, bound, start=2):
    return [q for q in primerange(start, bound) if F.splitting(q) == "inert"]


def surjectivity_witness(F, ell, bound=200):
    """A rational whose local class is nontrivial exactly at ell and one
    other inert prime"""
    if not isprime(ell) or F.splitting(ell) != "inert":
        raise PreconditionError(f"{ell} is not an inert prime of F")
    for other in inert_primes(F, bound):
        if other == ell:
            continue
        a = ell * other
        if set(nontrivial_places(a, F)) == {ell, other}:
            return a, other
    raise BudgetExceeded(f"no witness below {bound}")
