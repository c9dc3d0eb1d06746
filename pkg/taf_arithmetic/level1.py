# -*- coding: utf-8 -*-
"""Chromatic level one over an imaginary quadratic field F = Q(delta),
delta^2 = d, of discriminant D.

Class groups come from reduced positive definite binary quadratic forms.
An ideal is carried as ``scale * (a Z + (-b + sqrt(D))/2 Z)`` for a
primitive form (a, b, c) of discriminant D, so that Dirichlet composition
of forms is multiplication of ideals. Elements of O_F are pairs (x, y)
standing for (x + y sqrt(D)) / 2 ("half coordinates"); public results
use coordinates (a, b) for a + b delta.

On top of that: S-units, the split-prime search for a topological
generator q = t / t^c of Z_p^* / O_F^*, decomposition counts over the
Hilbert class field, the level one point count and the image-of-J orders
p^nu_p(k^t - 1).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
import logging

from sympy import divisors, factorint, primerange, sqrt_mod
from sympy.core.intfunc import igcdex
import pandas as pd

from taf_arithmetic.config import DEFAULT_PREC, DEFAULT_SEARCH_CAP
from taf_arithmetic.exact_arith import rat_to_str, require_prime, valuation_int
from taf_arithmetic.exceptions import (
    BudgetExceeded,
    PrecisionError,
    PreconditionError,
    TafError,
)
from taf_arithmetic.hermitian import QuadImagField

logger = logging.getLogger(__name__)


def _squarefree(n):
    return all(e == 1 for e in factorint(abs(n)).values())


def is_fundamental(D):
    """True for fundamental discriminants (D = 1 mod 4 squarefree, or
    D = 4m with m = 2, 3 mod 4 squarefree)"""
    D = int(D)
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return _squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def field_of_discriminant(D):
    """The imaginary quadratic field of fundamental discriminant D < 0"""
    D = int(D)
    if D < 0 and is_fundamental(D):
        return QuadImagField(D if D % 4 == 1 else D // 4)
    hint = ""
    if D < 0:
        core = -1
        for q, e in factorint(-D).items():
            if e % 2:
                core *= int(q)
        hint = f"; Q(sqrt({core})) has discriminant {QuadImagField(core).D}"
    raise PreconditionError(f"D={D} is not a negative fundamental discriminant{hint}")


def _field(F):
    if isinstance(F, QuadImagField):
        return F
    return field_of_discriminant(F)


def unit_count(F):
    """|O_F^*|: 4 for Q(i), 6 for Q(sqrt(-3)), else 2"""
    return {-4: 4, -3: 6}.get(_field(F).D, 2)


def to_half(D, a, b):
    """Half coordinates (x, y) of a + b delta"""
    a, b = Fraction(a), Fraction(b)
    x = 2 * a
    y = b if D % 4 == 0 else 2 * b
    if x.denominator != 1 or y.denominator != 1 or (x - D * y) % 2:
        raise PreconditionError(f"{a} + {b} delta is not integral")
    return int(x), int(y)


def from_half(D, x, y):
    """Coordinates (a, b) of (x + y sqrt(D)) / 2"""
    a = Fraction(x, 2)
    b = Fraction(y) if D % 4 == 0 else Fraction(y, 2)
    return a, b


def norm_solutions(D, n):
    """All (x, y) with x^2 - D y^2 = 4n, ordered by |y| then sign"""
    out = []
    for y in range(isqrt(4 * n // -D) + 1):
        rest = 4 * n + D * y * y
        x = isqrt(rest)
        if x * x != rest:
            continue
        for sx, sy in ((x, y), (-x, y), (x, -y), (-x, -y)):
            if (sx, sy) not in out:
                out.append((sx, sy))
    return out


# ----------------------------------------------------------
@dataclass(frozen=True)
class BQForm:
    """a x^2 + b x y + c y^2"""

    a: int
    b: int
    c: int

    @classmethod
    def from_ab(cls, a, b, D):
        c, rest = divmod(b * b - D, 4 * a)
        if rest:
            raise PreconditionError(f"b^2 = D mod 4a fails for a={a} b={b} D={D}")
        return cls(a, b, c)

    @classmethod
    def principal(cls, D):
        k = D % 2
        return cls(1, k, (k - D) // 4)

    @property
    def discriminant(self):
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self):
        a, b, c = self.a, self.b, self.c
        if not abs(b) <= a <= c:
            return False
        return not ((abs(b) == a or a == c) and b < 0)

    def normalized(self):
        """Equivalent form with -a < b <= a (same ideal)"""
        a, b, c = self.a, self.b, self.c
        if -a < b <= a:
            return self
        r = (a - b) // (2 * a)
        return BQForm(a, b + 2 * r * a, a * r * r + b * r + c)

    def reduced(self):
        if self.a <= 0 or self.discriminant >= 0:
            raise PreconditionError(f"{self.label()} is not positive definite")
        a, b, c = self.normalized()
        while a > c or (a == c and b < 0):
            s = (c + b) // (2 * c)
            a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
        return BQForm(a, b, c).normalized()

    def inverse(self):
        return BQForm(self.a, -self.b, self.c).reduced()

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def __mul__(self, other):
        return compose(self, other)[1].reduced()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** -n
        result = BQForm.principal(self.discriminant)
        x = self.reduced()
        while n:
            if n & 1:
                result = result * x
            x = x * x
            n >>= 1
        return result

    def label(self):
        return f"({self.a},{self.b},{self.c})"

    def to_json(self):
        return [self.a, self.b, self.c]


def compose(first, second):
    """Dirichlet composition of primitive forms of one discriminant.

    Returns (d, h) with I(first) I(second) = d I(h); h is not reduced.
    """
    D = first.discriminant
    if second.discriminant != D:
        raise PreconditionError("forms of different discriminants")
    if first.a > second.a:
        first, second = second, first
    a1, b1 = first.a, first.b
    a2, b2, c2 = second.a, second.b, second.c
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        u, _, d = igcdex(a2, a1)
        y1 = int(u)
    if s % d == 0:
        x2, y2, d1 = 0, -1, int(d)
    else:
        x2, y2, d1 = (int(v) for v in igcdex(s, d))
        y2 = -y2
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    return d1, BQForm(a3, b3, (b3 * b3 - D) // (4 * a3))


def reduced_forms(D):
    """All reduced primitive forms of discriminant D < 0"""
    if D >= 0 or D % 4 not in (0, 1):
        raise PreconditionError(f"D={D} is not a negative discriminant")
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            c, rest = divmod(b * b - D, 4 * a)
            if rest or c < a or (b < 0 and a == c):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(BQForm(a, b, c))
        a += 1
    return forms


# ----------------------------------------------------------
@dataclass(frozen=True)
class Ideal:
    """scale * (a Z + (-b + sqrt(D))/2 Z), form kept normalized"""

    scale: int
    form: BQForm

    def __post_init__(self):
        object.__setattr__(self, "form", self.form.normalized())

    @classmethod
    def unit(cls, D):
        return cls(1, BQForm.principal(D))

    @property
    def D(self):
        return self.form.discriminant

    @property
    def norm(self):
        return self.scale**2 * self.form.a

    def __mul__(self, other):
        d, form = compose(self.form, other.form)
        return Ideal(self.scale * other.scale * d, form)

    def __pow__(self, n):
        if n < 0:
            raise PreconditionError("only nonnegative powers of integral ideals")
        result = Ideal.unit(self.D)
        for _ in range(n):
            result = result * self
        return result

    def conjugate(self):
        return Ideal(self.scale, BQForm(self.form.a, -self.form.b, self.form.c))

    def class_form(self):
        return self.form.reduced()

    def contains(self, element):
        x, y = element
        s = self.scale
        if x % s or y % s:
            return False
        x, y = x // s, y // s
        return (x + self.form.b * y) % (2 * self.form.a) == 0

    def generator(self):
        """Half coordinates of a generator, None when not principal"""
        a, b = self.form.a, self.form.b
        for x, y in norm_solutions(self.D, a):
            if (x + b * y) % (2 * a) == 0:
                return self.scale * x, self.scale * y
        return None


def _centered(r, m):
    r %= m
    return r - m if r > m // 2 else r


@dataclass(frozen=True)
class PrimeIdeal:
    ell: int
    kind: str
    ideal: Ideal

    @property
    def norm(self):
        return self.ideal.norm

    @property
    def ramification(self):
        return 2 if self.kind == "ramified" else 1

    def label(self):
        if self.kind == "split":
            return f"{self.ell}{'+' if self.ideal.form.b > 0 else '-'}"
        return str(self.ell)

    def to_json(self):
        return {
            "label": self.label(),
            "ell": self.ell,
            "kind": self.kind,
            "norm": self.norm,
        }


def primes_over(F, ell):
    """Primes of F over ell; for split ell the one with b > 0 comes first"""
    F = _field(F)
    ell = require_prime(ell)
    D = F.D
    kind = F.splitting(ell)
    if kind == "inert":
        return [PrimeIdeal(ell, kind, Ideal(ell, BQForm.principal(D)))]
    roots = {_centered(int(r), 2 * ell) for r in sqrt_mod(D, 4 * ell, all_roots=True)}
    return [
        PrimeIdeal(ell, kind, Ideal(1, BQForm.from_ab(ell, b, D)))
        for b in sorted(roots, reverse=True)
    ]


def prime_from_label(F, label):
    """Inverse of PrimeIdeal.label, e.g. '13+' or '3'"""
    text = str(label).strip()
    try:
        ell = int(text.rstrip("+-"))
    except ValueError:
        raise PreconditionError(f"cannot read a prime from {label!r}") from None
    for prime in primes_over(F, ell):
        if prime.label() == text:
            return prime
    raise PreconditionError(f"no prime of F labelled {label!r}")


# ----------------------------------------------------------
@dataclass
class ClassGroup:
    """Cl(F) as reduced forms with the composition table"""

    D: int
    forms: list
    table: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        self._index = {f: i for i, f in enumerate(self.forms)}

    @property
    def order(self):
        return len(self.forms)

    @property
    def identity(self):
        return BQForm.principal(self.D).reduced()

    def index(self, form):
        return self._index[form.reduced()]

    def multiply(self, first, second):
        return self.forms[self.table[self.index(first)][self.index(second)]]

    def element_order(self, form):
        x, k = form.reduced(), 1
        while x != self.identity:
            x = self.multiply(x, form)
            k += 1
        return k

    def cyclic_subgroup(self, form):
        out = [self.identity]
        x = form.reduced()
        while x != self.identity:
            out.append(x)
            x = self.multiply(x, form)
        return out

    def to_json(self):
        return {
            "D": self.D,
            "h": self.order,
            "forms": [f.to_json() for f in self.forms],
            "element_orders": [self.element_order(f) for f in self.forms],
        }


def class_group(F):
    """Reduced forms of discriminant D with Gaussian composition"""
    D = _field(F).D
    forms = reduced_forms(D)
    index = {f: i for i, f in enumerate(forms)}
    table = [[index[f * g] for g in forms] for f in forms]
    logger.debug("D=%s: h=%s", D, len(forms))
    return ClassGroup(D, forms, table)


# ----------------------------------------------------------
@dataclass
class SUnitWitness:
    """kappa generates w^d, d the order of the class of w"""

    prime: PrimeIdeal
    order: int
    kappa: tuple

    def to_json(self):
        return {
            "prime": self.prime.label(),
            "norm": self.prime.norm,
            "d": self.order,
            "kappa": [rat_to_str(x) for x in self.kappa],
        }


@dataclass
class UnitDecomposition:
    D: int
    torsion: int
    rank: int
    witnesses: list

    def to_json(self):
        return {
            "D": self.D,
            "torsion": self.torsion,
            "rank": self.rank,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _check_primes(primes, p=None):
    labels = [w.label() for w in primes]
    if len(set(labels)) != len(labels):
        raise PreconditionError(f"repeated primes in S: {labels}")
    if p is not None and any(w.ell == p for w in primes):
        raise PreconditionError(f"S must avoid the primes over p={p}")


def unit_group_rank(F, primes, p=None):
    """(S^-1 O_F)^* = O_F^* x Z^|S| with a generator of w^d per w in S"""
    F = _field(F)
    _check_primes(primes, p)
    group = class_group(F)
    witnesses = []
    for w in primes:
        d = group.element_order(w.ideal.form)
        generator = (w.ideal**d).generator()
        if generator is None:
            raise TafError(f"{w.label()}^{d} has trivial class but no generator")
        witnesses.append(SUnitWitness(w, d, from_half(F.D, *generator)))
    return UnitDecomposition(F.D, unit_count(F), len(primes), witnesses)


def _integral(D, element):
    """(X, Y, m) with element = ((X + Y sqrt(D))/2) / m, X, Y integral"""
    a, b = (Fraction(v) for v in element)
    x = 2 * a
    y = b if D % 4 == 0 else 2 * b
    m = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    X, Y = int(x * m), int(y * m)
    if (X - D * Y) % 2:
        X, Y, m = 2 * X, 2 * Y, 2 * m
    return X, Y, m


def valuation_vector(F, primes, element):
    """(nu_w(alpha))_w for alpha = a + b delta"""
    F = _field(F)
    X, Y, m = _integral(F.D, element)
    if X == 0 and Y == 0:
        raise PreconditionError("the valuation vector of zero is undefined")
    out = []
    for w in primes:
        v, power = 0, w.ideal
        while power.contains((X, Y)):
            v += 1
            power = power * w.ideal
        out.append(v - valuation_int(m, w.ell) * w.ramification)
    return out


def class_of_vector(F, primes, vector):
    """Image of a valuation vector in Cl(F)"""
    D = _field(F).D
    out = BQForm.principal(D).reduced()
    for w, n in zip(primes, vector):
        out = out * w.ideal.class_form() ** n
    return out


def _element_mul(D, first, second):
    """Product of half-coordinate pairs"""
    x1, y1 = first
    x2, y2 = second
    return (
        Fraction(x1 * x2 + D * y1 * y2, 2),
        Fraction(x1 * y2 + x2 * y1, 2),
    )


def s_unit_basis(F, primes):
    """S-units alpha_i whose valuation vectors form a triangular basis of
    ker(Z^S -> Cl(F)).

    Returns a list of dicts {vector, element}; element is (a, b).
    """
    F = _field(F)
    _check_primes(primes)
    D = F.D
    identity = BQForm.principal(D).reduced()
    reachable = {identity: [0] * len(primes)}
    basis = []
    for i, w in enumerate(primes):
        c = w.ideal.class_form()
        e, x = 1, c
        while x not in reachable:
            e, x = e + 1, x * c
        rep = reachable[x]
        vector = [-k for k in rep]
        vector[i] = e
        # w^e / prod w_j^rep_j = w^e prod conj(w_j)^rep_j / prod N(w_j)^rep_j
        ideal = w.ideal**e
        denominator = 1
        for w_j, k in zip(primes, rep):
            if k:
                ideal = ideal * w_j.ideal.conjugate() ** k
                denominator *= w_j.norm**k
        generator = ideal.generator()
        if generator is None:
            raise TafError(f"relation {vector} has no generator")
        a, b = from_half(D, *generator)
        basis.append({"vector": vector, "element": (a / denominator, b / denominator)})

        grown = dict(reachable)
        for h, h_rep in reachable.items():
            y = h
            for k in range(1, e):
                y = y * c
                if y not in grown:
                    grown[y] = [r + (k if j == i else 0) for j, r in enumerate(h_rep)]
        reachable = grown
    return basis


# ----------------------------------------------------------
def _sqrt_lift(d, p, exponent):
    """The square root of d mod p^exponent lifting the least root mod p"""
    base = min(int(r) for r in sqrt_mod(d, p, all_roots=True))
    for r in sqrt_mod(d, p**exponent, all_roots=True):
        if int(r) % p == base:
            return int(r)
    raise PreconditionError(f"{d} is not a square mod {p}")


def _q_mod(F, element, p, exponent):
    """alpha / conj(alpha) in Z_p, mod p^exponent, delta -> least root"""
    X, Y, _ = _integral(F.D, element)
    modulus = p**exponent
    s = _sqrt_lift(F.d, p, exponent) * (2 if F.D % 4 == 0 else 1)
    num, den = (X + Y * s) % modulus, (X - Y * s) % modulus
    if den % p == 0 or num % p == 0:
        raise PreconditionError("the element is not a unit at p")
    return num * pow(den, -1, modulus) % modulus


def _nu_power_minus_one(q_mod, exponent, p, max_prec=DEFAULT_PREC):
    """nu_p(q^exponent - 1) with q given mod p^N by q_mod(N)"""
    N = 2
    while N <= max_prec:
        modulus = p**N
        rest = (pow(q_mod(N), exponent, modulus) - 1) % modulus
        if rest:
            return valuation_int(rest, p)
        logger.debug("q^%s = 1 mod %s^%s, raising precision", exponent, p, N)
        N *= 2
    raise PrecisionError(f"q^{exponent} = 1 mod {p}^{max_prec}")


def closure_index(q_mod, p, units):
    """Index of the closure of <q> in Z_p^* / mu_units (p odd)"""
    m = (p - 1) // units
    q = q_mod(1)
    order = next(k for k in divisors(m) if pow(q, k * units, p) == 1)
    v = _nu_power_minus_one(q_mod, p - 1, p)
    return (m // order) * p ** (v - 1)


def _is_root_of_unity(D, element, units):
    X, Y, _ = _integral(D, element)
    power = (Fraction(2), Fraction(0))
    for _ in range(units):
        power = _element_mul(D, power, (X, Y))
    # conj(alpha)^w = alpha^w iff alpha / conj(alpha) is in mu_w
    return power[1] == 0


@dataclass
class GeneratorPrime:
    """Split prime ell = N(t) with q = t / t^c a topological generator"""

    F: QuadImagField
    p: int
    ell: int
    element: tuple
    q: int
    q_power: int

    @property
    def t(self):
        return from_half(self.F.D, *self.element)

    def q_mod(self, exponent):
        return _q_mod(self.F, self.t, self.p, exponent)

    def label(self):
        a, b = self.t
        return f"({rat_to_str(a)})+({rat_to_str(b)})delta"

    def to_json(self):
        return {
            "d": self.F.d,
            "p": self.p,
            "ell": self.ell,
            "t": [rat_to_str(x) for x in self.t],
            "q_mod_p2": self.q,
            "q_power_mod_p2": self.q_power,
        }


def _require_split(F, p):
    if p == 2:
        raise PreconditionError("p = 2 needs two generating split primes; unsupported")
    if F.splitting(p) != "split":
        raise PreconditionError(f"p={p} does not split in Q(sqrt({F.d}))")


def find_generator_prime(F, p, cap=DEFAULT_SEARCH_CAP):
    """Smallest split ell != p with a principal prime w = (t) over it and
    q = t / t^c generating Z_p^* / O_F^*.

    t is the associate a + b delta of largest (a, b).
    """
    F = _field(F)
    p = require_prime(p)
    _require_split(F, p)
    units = unit_count(F)
    for ell in primerange(2, cap + 1):
        if ell == p or F.splitting(ell) != "split":
            continue
        solutions = norm_solutions(F.D, ell)
        if not solutions:
            logger.debug("ell=%s: the primes over ell are not principal", ell)
            continue
        element = max(solutions)

        def q_mod(exponent, element=element):
            return _q_mod(F, from_half(F.D, *element), p, exponent)

        index = closure_index(q_mod, p, units)
        if index != 1:
            logger.debug("ell=%s: q generates a subgroup of index %s", ell, index)
            continue
        q = q_mod(2)
        result = GeneratorPrime(F, p, ell, element, q, pow(q, units, p * p))
        logger.info(
            "p=%s: generator prime ell=%s, t=%s, q=%s mod %s",
            p,
            ell,
            result.label(),
            q,
            p * p,
        )
        return result
    logger.warning("p=%s: no generating split prime up to %s", p, cap)
    raise BudgetExceeded(f"no generating split prime up to {cap}; raise the search cap")


@dataclass
class ClosureIndex:
    p: int
    index: object
    generators: list

    def to_json(self):
        return {"p": self.p, "index": self.index, "generators": self.generators}


def s_unit_closure_index(F, p, primes):
    """Index of the closure of the image of the S-units, alpha -> alpha /
    conj(alpha), in Z_p^* / O_F^*; None when it is infinite"""
    F = _field(F)
    p = require_prime(p)
    _require_split(F, p)
    _check_primes(primes, p)
    units = unit_count(F)
    total = 0
    generators = []
    for entry in s_unit_basis(F, primes):
        element = entry["element"]
        if _is_root_of_unity(F.D, element, units):
            index = None
        else:
            index = closure_index(lambda N, e=element: _q_mod(F, e, p, N), p, units)
            total = gcd(total, index)
        generators.append(
            {
                "vector": entry["vector"],
                "element": [rat_to_str(x) for x in element],
                "index": index,
            }
        )
    return ClosureIndex(p, total or None, generators)


# ----------------------------------------------------------
@dataclass
class Decomposition:
    D: int
    p: int
    prime: str
    f: int
    factors: int
    h: int

    def to_json(self):
        return {
            "D": self.D,
            "p": self.p,
            "prime": self.prime,
            "f": self.f,
            "factors": self.factors,
            "h": self.h,
        }


def decomposition_count(F, p):
    """f = order of the class of a prime u over p; h / f factors"""
    F = _field(F)
    p = require_prime(p)
    if F.splitting(p) != "split":
        raise PreconditionError(f"p={p} does not split in Q(sqrt({F.d}))")
    group = class_group(F)
    u = primes_over(F, p)[0]
    f = group.element_order(u.ideal.form)
    return Decomposition(F.D, p, u.label(), f, group.order // f, group.order)


@dataclass
class FpbarPoints:
    """h points over Fpbar, defined over F_{p^f}, in h / f Frobenius orbits"""

    D: int
    p: int
    h: int
    f: int
    orbits: list
    automorphisms: int

    @property
    def mass(self):
        return Fraction(self.h, self.automorphisms)

    def to_json(self):
        return {
            "D": self.D,
            "p": self.p,
            "h": self.h,
            "f": self.f,
            "orbits": self.orbits,
            "automorphisms": self.automorphisms,
            "mass": rat_to_str(self.mass),
        }


def fpbar_points(F, p):
    F = _field(F)
    decomposition = decomposition_count(F, p)
    group = class_group(F)
    frobenius = primes_over(F, p)[0].ideal.form
    powers = group.cyclic_subgroup(frobenius)
    seen, orbits = set(), []
    for form in group.forms:
        if form in seen:
            continue
        orbit = [group.multiply(form, g) for g in powers]
        seen.update(orbit)
        orbits.append([g.label() for g in orbit])
    return FpbarPoints(F.D, p, group.order, decomposition.f, orbits, unit_count(F))


# ----------------------------------------------------------
@dataclass
class JOrderTable:
    """Orders p^nu of Z_p / (k^t - 1), the cokernel of psi^k - 1 in degree 2t"""

    p: int
    k: str
    rows: pd.DataFrame

    def order(self, t):
        match = self.rows[self.rows["t"] == t]
        return int(match["order"].iloc[0]) if len(match) else None

    def to_json(self):
        return {
            "p": self.p,
            "k": self.k,
            "rows": [
                {key: int(row[key]) for key in ("t", "stem", "nu", "order")}
                for _, row in self.rows.iterrows()
            ],
        }


def j_homotopy_orders(p, k, t_values, max_prec=DEFAULT_PREC):
    """Order p^nu_p(k^t - 1) for each even t > 0.

    k is an integer unit mod p (classical J, units {+-1}) or a
    GeneratorPrime (its q in Z_p, units O_F^*).
    """
    p = require_prime(p)
    if isinstance(k, GeneratorPrime):
        if k.p != p:
            raise PreconditionError(f"generator computed for p={k.p}, not {p}")
        q_mod, label, units = k.q_mod, k.label(), unit_count(k.F)
    else:
        k = int(k)
        if k % p == 0:
            raise PreconditionError(f"k={k} is not a unit mod {p}")
        if abs(k) == 1:
            raise PreconditionError("k^t = 1: the kernel of psi^k - 1 is not finite")

        def q_mod(exponent):
            return k % p**exponent

        label, units = str(k), 2
    if p > 2 and closure_index(q_mod, p, units) != 1:
        logger.warning("k=%s does not generate Z_%s^* / mu_%s", label, p, units)

    rows = []
    for t in t_values:
        if t <= 0 or t % 2:
            logger.debug("skipping t=%s", t)
            continue
        nu = _nu_power_minus_one(q_mod, t, p, max_prec)
        rows.append({"t": t, "stem": 2 * t - 1, "nu": nu, "order": p**nu})
    table = pd.DataFrame(rows, columns=["t", "stem", "nu", "order"])
    return JOrderTable(p, label, table)
