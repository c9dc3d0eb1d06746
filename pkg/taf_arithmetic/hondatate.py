# -*- coding: utf-8 -*-
"""p-adic types and the Honda-Tate / Kottwitz invariant formulas.

CM fields are never given by polynomials. A CMPlaceStructure only records
what the classification theorems use: for each place x over p its
ramification index e_x and residue degree f_x, the action of complex
conjugation c on those places, and optionally the places away from p
(finite or real) that carry Brauer invariants.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
import logging

from sympy import factorint, sqrt_mod

from taf_arithmetic import newton
from taf_arithmetic.exact_arith import kronecker, require_prime, valuation_int
from taf_arithmetic.exceptions import PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Place:
    id: str
    e: int = 1
    f: int = 1
    kind: str = "p"  # "p", "finite" or "real"

    @property
    def d(self):
        return self.e * self.f


@dataclass
class CMPlaceStructure:
    p: int
    places: list
    conj: dict
    degree: int = None

    def __post_init__(self):
        if self.p is not None:
            require_prime(self.p)
        by_id = {}
        for place in self.places:
            if place.id in by_id:
                raise PreconditionError(f"duplicate place {place.id}")
            if place.kind not in ("p", "finite", "real"):
                raise PreconditionError(f"unknown place kind {place.kind}")
            by_id[place.id] = place
        self._by_id = by_id
        for place in self.over_p():
            image = self.conj.get(place.id)
            if image is None or image not in by_id:
                raise PreconditionError(f"conjugation undefined at {place.id}")
            if self.conj.get(image) != place.id:
                raise PreconditionError("conjugation is not an involution")
            other = by_id[image]
            if (other.e, other.f) != (place.e, place.f):
                raise PreconditionError(
                    f"conjugation does not preserve (e, f) at {place.id}"
                )
        total = sum(place.d for place in self.over_p())
        if self.degree is not None and total != self.degree:
            logger.warning(
                "local degrees sum to %s, declared degree is %s", total, self.degree
            )

    def __getitem__(self, place_id):
        return self._by_id[place_id]

    def over_p(self):
        return [place for place in self.places if place.kind == "p"]

    def total_degree(self):
        if self.degree is not None:
            return self.degree
        return sum(place.d for place in self.over_p())

    def to_json(self):
        return {
            "p": self.p,
            "degree": self.total_degree(),
            "places": [
                {"id": x.id, "e": x.e, "f": x.f, "kind": x.kind} for x in self.places
            ],
            "conj": dict(sorted(self.conj.items())),
        }

    @classmethod
    def from_json(cls, data):
        places = [
            Place(
                str(x["id"]),
                int(x.get("e", 1)),
                int(x.get("f", 1)),
                x.get("kind", "p"),
            )
            for x in data["places"]
        ]
        conj = {str(k): str(v) for k, v in data.get("conj", {}).items()}
        return cls(data.get("p"), places, conj, data.get("degree"))


@dataclass
class PAdicType:
    structure: CMPlaceStructure
    eta: dict

    def __post_init__(self):
        self.eta = {k: Fraction(v) for k, v in self.eta.items()}

    def to_json(self):
        return {
            "structure": self.structure.to_json(),
            "eta": {k: str(v) for k, v in sorted(self.eta.items())},
        }

    @classmethod
    def from_json(cls, data):
        structure = CMPlaceStructure.from_json(data["structure"])
        return cls(structure, {str(k): Fraction(v) for k, v in data["eta"].items()})


@dataclass(frozen=True)
class WeilInteger:
    """pi = a + b sqrt(d) in an imaginary quadratic field, q = p^r"""

    d: int
    a: int
    b: int
    q: int


@dataclass
class HondaTateInvariants:
    inv: dict
    m: int
    degree: int
    dimension: Fraction

    def to_json(self):
        return {
            "inv": {k: str(v) for k, v in sorted(self.inv.items())},
            "m": self.m,
            "degree": self.degree,
            "dimension": str(self.dimension),
        }


@dataclass
class PolygonReport:
    realizable: bool
    polygon: newton.NewtonPolygon = None
    problems: list = field(default_factory=list)


# ----------------------------------------------------------
def validate_type(ptype):
    """List of violations of eta_x/e_x + eta_c(x)/e_x = 1 and 0 <= s_x <= 1"""
    structure = ptype.structure
    violations = []
    for place in structure.over_p():
        if place.id not in ptype.eta:
            violations.append(f"{place.id}: eta missing")
            continue
        slope = ptype.eta[place.id] / place.e
        if not 0 <= slope <= 1:
            violations.append(f"{place.id}: slope {slope} outside [0, 1]")
        partner = structure.conj[place.id]
        if partner not in ptype.eta:
            continue
        if slope + ptype.eta[partner] / place.e != 1:
            violations.append(
                f"{place.id}: eta/e + eta_c/e = {slope + ptype.eta[partner] / place.e}"
            )
    for extra in set(ptype.eta) - {x.id for x in structure.over_p()}:
        violations.append(f"{extra}: not a place over p")
    return sorted(violations)


def _require_valid(ptype):
    violations = validate_type(ptype)
    if violations:
        raise PreconditionError("invalid p-adic type: " + "; ".join(violations))


def slopes_of_type(ptype):
    """s_x = eta_x / e_x"""
    _require_valid(ptype)
    return {x.id: ptype.eta[x.id] / x.e for x in ptype.structure.over_p()}


def _mod_one(x):
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


def invariants_and_dimension(ptype, pi_valuations=None, r=None):
    """inv_x = eta_x f_x mod 1 at x | p, m = lcd of the invariants, dim = d m / 2.

    With ``pi_valuations`` (x -> x(pi)) and ``r`` (q = p^r) the invariants are
    computed as x(pi)/x(q) [M_x:Q_p] instead and must agree with the type.
    """
    _require_valid(ptype)
    structure = ptype.structure
    inv = {}
    for place in structure.over_p():
        value = _mod_one(ptype.eta[place.id] * place.f)
        if pi_valuations is not None:
            if not r:
                raise PreconditionError("r is needed with pi valuations")
            from_pi = _mod_one(Fraction(pi_valuations[place.id], r * place.e) * place.d)
            if from_pi != value:
                raise PreconditionError(
                    f"{place.id}: x(pi)/x(q) d_x = {from_pi} disagrees with {value}"
                )
        inv[place.id] = value
    for place in structure.places:
        if place.kind == "real":
            inv[place.id] = Fraction(1, 2)
    m = 1
    for value in inv.values():
        m = lcm(m, value.denominator)
    degree = structure.total_degree()
    return HondaTateInvariants(inv, m, degree, Fraction(degree * m, 2))


def kottwitz_invariants(ptype, b_inv):
    """Local invariants of D = End_B(A) from those of B (x) L"""
    _require_valid(ptype)
    structure = ptype.structure
    result = {}
    for place in structure.over_p():
        shift = Fraction(b_inv.get(place.id, 0))
        result[place.id] = _mod_one(ptype.eta[place.id] * place.f - shift)
    known = {x.id for x in structure.places}
    for place_id, value in b_inv.items():
        if place_id in result:
            continue
        kind = structure[place_id].kind if place_id in known else "finite"
        if kind == "real":
            result[place_id] = _mod_one(Fraction(1, 2) - Fraction(value))
        else:
            result[place_id] = _mod_one(-Fraction(value))
    for place in structure.places:
        if place.kind == "real" and place.id not in result:
            result[place.id] = Fraction(1, 2)
    return result


def minimality_check(ptype, sub, covering):
    """Decide whether ptype is pulled back from a type on ``sub``.

    ``covering`` maps each place x' of ptype over p to (x, e_rel) with x a
    place of ``sub``. Returns ("descends", eta_sub) or ("minimal-over-sub", None).
    """
    _require_valid(ptype)
    sub_ids = {x.id for x in sub.over_p()}
    candidate = {}
    for place in ptype.structure.over_p():
        if place.id not in covering:
            raise PreconditionError(f"covering misses {place.id}")
        below, e_rel = covering[place.id]
        if below not in sub_ids:
            raise PreconditionError(f"{below} is not a place of the substructure")
        if e_rel < 1 or place.e != e_rel * sub[below].e:
            raise PreconditionError(f"ramification mismatch over {below}")
        value = ptype.eta[place.id] / e_rel
        if candidate.setdefault(below, value) != value:
            return "minimal-over-sub", None
    if set(candidate) != sub_ids:
        raise PreconditionError("covering is not surjective on the substructure")
    if validate_type(PAdicType(sub, candidate)):
        return "minimal-over-sub", None
    return "descends", candidate


def is_minimal(ptype, subs):
    """Minimal relative to the supplied (substructure, covering) pairs"""
    return all(minimality_check(ptype, s, c)[0] != "descends" for s, c in subs)


# ----------------------------------------------------------
def split_height_n_type(n, p=None):
    """Imaginary quadratic F with p = u u^c split, eta_u = 1/n, eta_uc = (n-1)/n"""
    if n < 1:
        raise PreconditionError("height must be positive")
    structure = CMPlaceStructure(
        p, [Place("u"), Place("uc")], {"u": "uc", "uc": "u"}, degree=2
    )
    return PAdicType(structure, {"u": Fraction(1, n), "uc": Fraction(n - 1, n)})


def polygon_of_type(ptype, m):
    """Newton polygon of A(p) when each A(x) has height d_x m"""
    slopes = slopes_of_type(ptype)
    segments = []
    problems = []
    for place in ptype.structure.over_p():
        height = place.d * m
        dim = slopes[place.id] * height
        if dim.denominator != 1:
            problems.append(f"{place.id}: slope {slopes[place.id]} at height {height}")
            continue
        segments.append((int(dim), height, 1))
    if problems:
        logger.warning("non-realizable at that height: %s", "; ".join(problems))
        return PolygonReport(False, None, problems)
    return PolygonReport(True, newton.from_slopes(segments))


def blinear_dimension(d, s, t):
    """dim A = d s t / 2 for a simple B-linear abelian variety"""
    return Fraction(d * s * t, 2)


# ----------------------------------------------------------
def _field_discriminant(d):
    return d if d % 4 == 1 else 4 * d


def verify_weil_integer(w):
    """|pi|^2 = a^2 - d b^2 must equal q, a prime power"""
    problems = []
    if w.d >= 0:
        problems.append("d must be negative")
    factors = factorint(w.q)
    if w.q < 2 or len(factors) != 1:
        problems.append(f"q={w.q} is not a prime power")
    norm = w.a**2 - w.d * w.b**2
    if norm != w.q:
        problems.append(f"norm {norm} differs from q={w.q}")
    return ("ok", []) if not problems else ("violation", problems)


def base_change(w, r):
    """pi -> pi^r, q -> q^r"""
    a, b = 1, 0
    for _ in range(r):
        a, b = a * w.a + w.d * b * w.b, a * w.b + b * w.a
    return WeilInteger(w.d, a, b, w.q**r)


def type_of_weil_integer(w):
    """The p-adic type (x(pi)/r) of a Weil q-integer of Q(sqrt d)"""
    status, problems = verify_weil_integer(w)
    if status != "ok":
        raise PreconditionError("; ".join(problems))
    ((p, r),) = factorint(w.q).items()
    p, r = int(p), int(r)
    splitting = kronecker(_field_discriminant(w.d), p)
    if splitting == 1:
        # u is the place where sqrt(d) maps to the smallest root mod p^(r+2)
        modulus = p ** (r + 2)
        root = min(sqrt_mod(w.d % modulus, modulus, all_roots=True))
        v_u = min(r, valuation_int((w.a + w.b * root) % p ** (r + 1), p))
        structure = CMPlaceStructure(
            p, [Place("u"), Place("uc")], {"u": "uc", "uc": "u"}, degree=2
        )
        return PAdicType(structure, {"u": Fraction(v_u, r), "uc": Fraction(r - v_u, r)})
    if splitting == -1:
        structure = CMPlaceStructure(p, [Place("x", 1, 2)], {"x": "x"}, degree=2)
        return PAdicType(structure, {"x": Fraction(1, 2)})
    structure = CMPlaceStructure(p, [Place("x", 2, 1)], {"x": "x"}, degree=2)
    return PAdicType(structure, {"x": Fraction(1)})
