# -*- coding: utf-8 -*-
"""Lattice models of the Bruhat-Tits buildings of GL_n, SL_n, U and GU
over Q_ell.

Elements of the local field K are exact pairs a + b sqrt(d) with rational
a, b; K is Q_ell itself (d = 0), its unramified quadratic extension or a
ramified one. A lattice is stored in column Hermite normal form: pi^scale
times the span of an upper triangular basis whose diagonal entries are
exact powers of pi and whose entries right of a pivot pi^e are canonical
representatives of O / pi^e. Equal lattices therefore compare equal.

Quadratic extensions need odd residue characteristic; the unique
preferred lattice of an anisotropic space is only available there.
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
import logging
import math
import threading

from sympy import legendre_symbol

from taf_arithmetic import hermitian
from taf_arithmetic.config import DEFAULT_BUDGET, DEFAULT_PREC
from taf_arithmetic.exact_arith import INFINITY, require_prime, valuation_int
from taf_arithmetic.exceptions import BudgetExceeded, PreconditionError, PrecisionError

logger = logging.getLogger(__name__)

_LOCK = threading.Lock()
_CANONICAL = {}
_CANONICAL_LIMIT = 100000


def _vq(x, ell):
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return valuation_int(x.numerator, ell) - valuation_int(x.denominator, ell)


def _mod(x, modulus):
    """Integer in [0, modulus) congruent to the ell-integral rational x"""
    if modulus == 1:
        return 0
    x = Fraction(x)
    return x.numerator * pow(x.denominator, -1, modulus) % modulus


# ----------------------------------------------------------
@dataclass(frozen=True, eq=False)
class KElt:
    """a + b sqrt(d)"""

    a: Fraction
    b: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _coerce(self, other):
        if isinstance(other, KElt):
            return other
        return KElt(other, 0, self.d)

    def _d(self, other):
        return self.d or other.d

    def __eq__(self, other):
        if not isinstance(other, (KElt, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __add__(self, other):
        other = self._coerce(other)
        return KElt(self.a + other.a, self.b + other.b, self._d(other))

    __radd__ = __add__

    def __neg__(self):
        return KElt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d = self._d(other)
        return KElt(
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def conj(self):
        return KElt(self.a, -self.b, self.d)

    def norm(self):
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise PreconditionError("division by zero in K")
        return KElt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __str__(self):
        if not self.b:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.d})"


@dataclass(frozen=True)
class LocalRing:
    """Q_ell ('none'), or Q_ell(sqrt d) with kind 'inert' or 'ramified'.

    ``prec`` bounds every pivot exponent and scale; exceeding it raises
    PrecisionError.
    """

    ell: int
    kind: str = "none"
    d: int = 0
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        require_prime(self.ell, "ell")
        if self.kind == "none":
            object.__setattr__(self, "d", 0)
            return
        if self.kind not in ("inert", "ramified"):
            raise PreconditionError(f"unknown extension kind {self.kind}")
        if self.ell == 2:
            raise PreconditionError(
                "quadratic extensions need odd residue characteristic"
            )
        d = int(self.d)
        if d == 0:
            raise PreconditionError("d must be nonzero")
        v = valuation_int(d, self.ell)
        d //= self.ell ** (2 * (v // 2))
        if self.kind == "inert":
            if v % 2 or legendre_symbol(d % self.ell, self.ell) != -1:
                raise PreconditionError(
                    f"inert needs a unit non-residue, got d={self.d}"
                )
        elif v % 2 == 0:
            raise PreconditionError(
                f"ramified needs odd valuation of d, got d={self.d}"
            )
        object.__setattr__(self, "d", d)

    @property
    def e(self):
        return 2 if self.kind == "ramified" else 1

    @property
    def q(self):
        """size of the residue field"""
        return self.ell**2 if self.kind == "inert" else self.ell

    def lift(self, x):
        if isinstance(x, KElt):
            return KElt(x.a, x.b, self.d)
        return KElt(x, 0, self.d)

    def elt(self, a, b=0):
        if self.kind == "none" and b:
            raise PreconditionError("Q_ell has no sqrt(d) component")
        return KElt(a, b, self.d)

    @property
    def pi(self):
        return self.pi_power(1)

    def pi_power(self, e):
        if self.kind != "ramified":
            return self.elt(Fraction(self.ell) ** e)
        m, r = divmod(e, 2)
        if r:
            return self.elt(0, Fraction(self.d) ** m)
        return self.elt(Fraction(self.d) ** m)

    def val(self, x):
        """Normalized valuation, v(pi) = 1"""
        x = self.lift(x)
        if not x:
            return INFINITY
        va, vb = _vq(x.a, self.ell), _vq(x.b, self.ell)
        if self.kind == "none":
            return va
        if self.kind == "inert":
            return min(va, vb)
        candidates = []
        if va is not INFINITY:
            candidates.append(2 * va)
        if vb is not INFINITY:
            candidates.append(2 * vb + 1)
        return min(candidates)

    def reduce(self, x, e):
        """Canonical representative of the integral x modulo pi^e"""
        x = self.lift(x)
        if e <= 0:
            return self.elt(0)
        if self.kind == "none":
            return self.elt(_mod(x.a, self.ell**e))
        if self.kind == "inert":
            m = self.ell**e
            return self.elt(_mod(x.a, m), _mod(x.b, m))
        return self.elt(
            _mod(x.a, self.ell ** ((e + 1) // 2)), _mod(x.b, self.ell ** (e // 2))
        )

    def residues(self, e):
        """All canonical representatives of O / pi^e"""
        if e <= 0:
            return [self.elt(0)]
        if self.kind == "none":
            return [self.elt(a) for a in range(self.ell**e)]
        if self.kind == "inert":
            m = self.ell**e
            return [self.elt(a, b) for a, b in product(range(m), range(m))]
        top, bottom = self.ell ** ((e + 1) // 2), self.ell ** (e // 2)
        return [self.elt(a, b) for a, b in product(range(top), range(bottom))]


# ----------------------------------------------------------
def _mat_mul(A, B):
    return [
        [
            sum((A[i][k] * B[k][j] for k in range(len(B))), KElt(0))
            for j in range(len(B[0]))
        ]
        for i in range(len(A))
    ]


def _conj_t(A):
    return [[A[i][j].conj() for i in range(len(A))] for j in range(len(A[0]))]


def _columns(A):
    return [[A[i][j] for i in range(len(A))] for j in range(len(A[0]))]


def _rows(columns):
    return [[col[i] for col in columns] for i in range(len(columns[0]))]


def _inverse(A):
    n = len(A)
    work = [list(A[i]) + [KElt(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next((r for r in range(c, n) if work[r][c]), None)
        if pivot is None:
            raise PreconditionError("singular matrix")
        work[c], work[pivot] = work[pivot], work[c]
        inv = work[c][c].inverse()
        work[c] = [x * inv for x in work[c]]
        for r in range(n):
            if r != c and work[r][c]:
                factor = work[r][c]
                work[r] = [x - factor * y for x, y in zip(work[r], work[c])]
    return [row[n:] for row in work]


def _is_singular(A):
    try:
        _inverse(A)
    except PreconditionError:
        return True
    return False


# ----------------------------------------------------------
@dataclass(frozen=True)
class LocalLattice:
    """pi^scale times the span of the columns of ``basis`` (canonical)"""

    ring: LocalRing
    basis: tuple
    scale: int = 0

    @property
    def n(self):
        return len(self.basis)

    @classmethod
    def from_columns(cls, ring, columns):
        return hnf_normalize(ring, columns)

    @classmethod
    def standard(cls, ring, n):
        return hnf_normalize(ring, [[int(i == j) for i in range(n)] for j in range(n)])

    def matrix(self):
        factor = self.ring.pi_power(self.scale)
        return [[x * factor for x in row] for row in self.basis]

    def columns(self):
        return _columns(self.matrix())

    def exponents(self):
        return tuple(self.ring.val(self.basis[i][i]) for i in range(self.n))

    def det_valuation(self):
        return sum(self.exponents()) + self.n * self.scale

    def scaled(self, k):
        """pi^k L"""
        if abs(self.scale + k) > self.ring.prec:
            raise PrecisionError(
                f"scale {self.scale + k} exceeds prec {self.ring.prec}"
            )
        return LocalLattice(self.ring, self.basis, self.scale + k)

    def label(self):
        rows = ";".join(",".join(str(x) for x in row) for row in self.basis)
        return f"pi^{self.scale}[{rows}]"

    def to_json(self):
        return {
            "scale": self.scale,
            "basis": [[str(x) for x in row] for row in self.basis],
        }


def hnf_normalize(ring, columns):
    """Canonical LocalLattice spanned by ``columns`` (n or more vectors)"""
    key = (ring, tuple(tuple(ring.lift(x) for x in col) for col in columns))
    cached = _CANONICAL.get(key)
    if cached is not None:
        return cached

    cols = [list(col) for col in key[1]]
    n = len(cols[0])
    vals = [ring.val(x) for col in cols for x in col if x]
    if not vals:
        raise PreconditionError("the zero module is not a lattice")
    scale = min(vals)
    if abs(scale) > ring.prec:
        raise PrecisionError(f"scale {scale} exceeds prec {ring.prec}")
    if scale:
        shift = ring.pi_power(-scale)
        cols = [[x * shift for x in col] for col in cols]

    active = list(range(len(cols)))
    placed = [None] * n
    for i in range(n - 1, -1, -1):
        best = None
        for c in active:
            if cols[c][i]:
                v = ring.val(cols[c][i])
                if best is None or v < best[1]:
                    best = (c, v)
        if best is None:
            raise PreconditionError("vectors are dependent: no lattice of full rank")
        c, e = best
        if e > ring.prec:
            raise PrecisionError(f"pivot exponent {e} exceeds prec {ring.prec}")
        active.remove(c)
        pe = ring.pi_power(e)
        unit = cols[c][i] / pe
        pivot = [x / unit for x in cols[c]]
        for other in active:
            y = cols[other][i]
            if y:
                factor = y / pe
                cols[other] = [a - factor * b for a, b in zip(cols[other], pivot)]
        placed[i] = (pivot, e)

    # reduce right of each pivot
    for j in range(n):
        col = placed[j][0]
        for i in range(j - 1, -1, -1):
            pivot_i, e_i = placed[i]
            rep = ring.reduce(col[i], e_i)
            if col[i] != rep:
                factor = (col[i] - rep) / ring.pi_power(e_i)
                col = [a - factor * b for a, b in zip(col, pivot_i)]
        placed[j] = (col, placed[j][1])

    basis = tuple(tuple(placed[j][0][i] for j in range(n)) for i in range(n))
    lattice = LocalLattice(ring, basis, scale)
    with _LOCK:
        if len(_CANONICAL) >= _CANONICAL_LIMIT:
            _CANONICAL.clear()
        _CANONICAL[key] = lattice
    return lattice


def contains(big, small):
    """small <= big"""
    X = _mat_mul(_inverse(big.matrix()), small.matrix())
    return all(big.ring.val(x) >= 0 for row in X for x in row if x)


def lattice_sum(first, second):
    return hnf_normalize(first.ring, first.columns() + second.columns())


def transform(g, lattice):
    """g(L) for an invertible matrix g over K"""
    ring = lattice.ring
    g = [[ring.lift(x) for x in row] for row in g]
    return hnf_normalize(ring, _columns(_mat_mul(g, lattice.matrix())))


def homothety_class(lattice):
    """Representative of [L] with the scale stripped"""
    return LocalLattice(lattice.ring, lattice.basis, 0)


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def sublattices_of_index(lattice, s, budget=DEFAULT_BUDGET):
    """All M <= L with [L : M] = s, s a power of the residue field size"""
    ring, n = lattice.ring, lattice.n
    length, rest = 0, s
    while rest % ring.q == 0:
        rest //= ring.q
        length += 1
    if rest != 1:
        raise PreconditionError(f"index {s} is not a power of {ring.q}")

    shapes = list(_compositions(length, n))
    total = sum(
        math.prod(ring.q ** exps[i] for i in range(n) for _ in range(i + 1, n))
        for exps in shapes
    )
    if total > budget:
        raise BudgetExceeded(f"{total} sublattices of index {s} exceed budget {budget}")

    base = lattice.matrix()
    found = {}
    for exps in shapes:
        slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
        choices = [ring.residues(exps[i]) for i, _ in slots]
        for entries in product(*choices):
            H = [[KElt(0, 0, ring.d) for _ in range(n)] for _ in range(n)]
            for i in range(n):
                H[i][i] = ring.pi_power(exps[i])
            for (i, j), x in zip(slots, entries):
                H[i][j] = x
            sub = hnf_normalize(ring, _columns(_mat_mul(base, H)))
            found[sub] = None
    logger.debug("%s sublattices of index %s", len(found), s)
    return list(found)


# ----------------------------------------------------------
@dataclass(frozen=True)
class LatticeChain:
    """L_0 < L_1 < ... < L_k; periodic when L_k <= pi^-1 L_0"""

    lattices: tuple
    periodic: bool = False

    @classmethod
    def build(cls, lattices):
        lattices = tuple(lattices)
        for lower, upper in zip(lattices, lattices[1:]):
            if lower == upper or not contains(upper, lower):
                raise PreconditionError("chain inclusions are not strict")
        periodic = contains(lattices[0].scaled(-1), lattices[-1])
        return cls(lattices, periodic)

    def __len__(self):
        return len(self.lattices)

    def to_json(self):
        return {
            "periodic": self.periodic,
            "lattices": [L.to_json() for L in self.lattices],
        }


def chamber_from_basis_GL(ring, vectors):
    """L_i(v) = pi^-1 O v_1 + ... + pi^-1 O v_i + O v_(i+1) + ... + O v_n"""
    vectors = [[ring.lift(x) for x in v] for v in vectors]
    n = len(vectors)
    if any(len(v) != n for v in vectors) or _is_singular(_rows(vectors)):
        raise PreconditionError("chamber needs a basis: vectors are dependent")
    inv_pi = ring.pi_power(-1)
    lattices = []
    for i in range(n + 1):
        cols = [[x * inv_pi for x in v] for v in vectors[:i]] + vectors[i:]
        lattices.append(hnf_normalize(ring, cols))
    return LatticeChain.build(lattices)


def chamber_from_basis_SL(ring, vectors):
    """The n vertices [L_0], ..., [L_(n-1)] of the SL chamber"""
    chain = chamber_from_basis_GL(ring, vectors)
    return [homothety_class(L) for L in chain.lattices[:-1]]


# ----------------------------------------------------------
@dataclass
class HermitianSpace:
    """(K^n, w^* G v) with G from the isotropy table.

    Coordinates 0 .. 2r-1 carry the normalized hyperbolic part, the rest
    the diagonal anisotropic kernel.
    """

    ring: LocalRing
    gram: list
    witt_index: int
    disc: Fraction = None

    def __post_init__(self):
        self.gram = [[self.ring.lift(x) for x in row] for row in self.gram]
        n = len(self.gram)
        if any(len(row) != n for row in self.gram):
            raise PreconditionError("Gram matrix must be square")
        for i in range(n):
            for j in range(n):
                if self.gram[i][j] != self.gram[j][i].conj():
                    raise PreconditionError("Gram matrix is not conjugate symmetric")
        if _is_singular(self.gram):
            raise PreconditionError("Gram matrix is degenerate")
        if not 0 <= 2 * self.witt_index <= n:
            raise PreconditionError("Witt index out of range")

    @property
    def n(self):
        return len(self.gram)

    @classmethod
    def standard(cls, F, ell, n, branch=0, prec=DEFAULT_PREC):
        """Space over F_ell for the given isotropy table row"""
        kind = F.splitting(ell)
        if kind == "split":
            raise PreconditionError(f"{ell} splits in F: use the GL model")
        ring = LocalRing(ell, kind, F.d, prec)
        row = hermitian.isotropy_table(F, ell, n)[branch]
        return cls(ring, row["gram"], row["witt_index"], Fraction(row["disc"]))

    def pair(self, w, v):
        """(w, v) = w^* G v"""
        total = KElt(0, 0, self.ring.d)
        for i in range(self.n):
            for j in range(self.n):
                if self.gram[i][j]:
                    total = total + self.ring.lift(w[i]).conj() * self.gram[i][j] * v[j]
        return total

    def anisotropic_columns(self):
        """Basis of X = {w in V^perp : (w, w) in O}"""
        ring, r = self.ring, self.witt_index
        cols = []
        for i in range(2 * r, self.n):
            for j in range(2 * r, self.n):
                if i != j and self.gram[i][j]:
                    raise PreconditionError("anisotropic kernel must be diagonal")
            c = -(ring.val(self.gram[i][i]) // 2)
            col = [KElt(0, 0, ring.d)] * self.n
            col[i] = ring.pi_power(c)
            cols.append(col)
        return cols

    def to_json(self):
        return {
            "ell": self.ring.ell,
            "kind": self.ring.kind,
            "d": self.ring.d,
            "n": self.n,
            "witt_index": self.witt_index,
            "gram": [[str(x) for x in row] for row in self.gram],
        }


def dual_lattice(lattice, space=None):
    """L^# = {w : (w, L) in O}, basis (B^* G)^-1; identity form if no space"""
    ring, n = lattice.ring, lattice.n
    if space is None:
        gram = [[KElt(int(i == j), 0, ring.d) for j in range(n)] for i in range(n)]
    else:
        gram = space.gram
    B = lattice.matrix()
    return hnf_normalize(ring, _columns(_inverse(_mat_mul(_conj_t(B), gram))))


def is_preferred(lattice, space):
    """(L <= L^# <= pi^-1 L, length of L^# / L)"""
    dual = dual_lattice(lattice, space)
    if not contains(dual, lattice):
        return False, None
    vertex_type = lattice.det_valuation() - dual.det_valuation()
    return contains(lattice.scaled(-1), dual), vertex_type


def preferred_representative(lattice, space):
    """The unique preferred lattice pi^s L, if there is one"""
    n = lattice.n
    gap = dual_lattice(lattice, space).det_valuation() - lattice.det_valuation()
    low = -(-gap // (2 * n))
    high = (gap + n) // (2 * n)
    for s in range(low, high + 1):
        candidate = lattice.scaled(s)
        if is_preferred(candidate, space)[0]:
            return candidate
    raise PreconditionError("lattice is not homothetic to a preferred lattice")


def chamber_from_hyperbolic_basis_U(space, vectors=None):
    """L_i(v) = pi O v_1 + .. + pi O v_(r-i) + O v_(r-i+1) + .. + O v_2r + X"""
    ring, r, n = space.ring, space.witt_index, space.n
    if vectors is None:
        vectors = [[int(i == j) for i in range(n)] for j in range(2 * r)]
    vectors = [[ring.lift(x) for x in v] for v in vectors]
    if len(vectors) != 2 * r:
        raise PreconditionError(f"need 2r = {2 * r} hyperbolic vectors")
    aniso = space.anisotropic_columns()
    for i, v in enumerate(vectors):
        for j, w in enumerate(vectors):
            expected = 1 if i + j == 2 * r - 1 else 0
            if space.pair(v, w) != expected:
                raise PreconditionError("hyperbolic basis is not normalized")
        if any(space.pair(v, x) for x in aniso):
            raise PreconditionError("hyperbolic basis is not orthogonal to the kernel")

    lattices = []
    for i in range(r + 1):
        cols = [[x * ring.pi for x in v] for v in vectors[: r - i]]
        cols += vectors[r - i :] + aniso
        lattice = hnf_normalize(ring, cols)
        if not is_preferred(lattice, space)[0]:
            raise PreconditionError(f"L_{i} is not preferred")
        lattices.append(lattice)
    return LatticeChain.build(lattices)


def gu_dimension(r):
    """B(GU) = B(U) x R"""
    return r + 1


def building_dimension(F, ell, n, branch=0):
    """Dimension of B(U) at ell: n when ell splits, else the Witt index"""
    if F.splitting(ell) == "split":
        return len(chamber_from_basis_GL(LocalRing(ell), _identity(n))) - 1
    space = HermitianSpace.standard(F, ell, n, branch)
    return len(chamber_from_hyperbolic_basis_U(space)) - 1


def _identity(n):
    return [[int(i == j) for i in range(n)] for j in range(n)]


# ----------------------------------------------------------
def similitude_norm(space, g):
    """nu with (g w, g v) = nu (w, v); raises unless g is a similitude"""
    ring = space.ring
    g = [[ring.lift(x) for x in row] for row in g]
    image = _mat_mul(_mat_mul(_conj_t(g), space.gram), g)
    nu = None
    for i in range(space.n):
        for j in range(space.n):
            if space.gram[i][j]:
                nu = image[i][j] / space.gram[i][j]
                break
        if nu is not None:
            break
    for i in range(space.n):
        for j in range(space.n):
            if image[i][j] != nu * space.gram[i][j]:
                raise PreconditionError("g is not a similitude of the form")
    if nu.b or not nu:
        raise PreconditionError("similitude norm must be a nonzero element of Q_ell")
    return nu


def gu_act(space, g, lattice):
    """g . [L]: [g(L)] for even valuation of nu(g), [(g(L))^#] for odd"""
    nu = similitude_norm(space, g)
    base = preferred_representative(lattice, space)
    image = transform(g, base)
    if space.ring.val(nu) % 2:
        image = dual_lattice(image, space)
    return preferred_representative(image, space)


# ----------------------------------------------------------
def _between(lattice, budget):
    """M with pi L < M < L"""
    ring, n = lattice.ring, lattice.n
    bottom = lattice.scaled(1)
    out = []
    for length in range(1, n):
        for sub in sublattices_of_index(lattice, ring.q**length, budget):
            if contains(sub, bottom):
                out.append((length, sub))
    return out


def link_census(lattice, space=None, budget=DEFAULT_BUDGET):
    """Counts around a vertex.

    Without a space: the SL_n link of [L], with neighbors by index, the
    number of chambers (complete flags) and the thickness, the least
    number of chambers through a panel containing [L]. With a space: the
    preferred neighbors of the preferred lattice L by vertex type.
    """
    if space is not None:
        return _unitary_census(lattice, space, budget)
    n = lattice.n
    levels = {}
    for length, sub in _between(lattice, budget):
        levels.setdefault(length, []).append(sub)

    chambers = []

    def extend(chain):
        if len(chambers) > budget:
            raise BudgetExceeded(f"more than {budget} chambers")
        if len(chain) == n - 1:
            chambers.append(tuple(chain))
            return
        for sub in levels.get(len(chain) + 1, []):
            if not chain or contains(chain[-1], sub):
                extend(chain + [sub])

    extend([])
    panels = Counter()
    for chamber in chambers:
        for i in range(len(chamber)):
            panels[(i, chamber[:i] + chamber[i + 1 :])] += 1
    census = {
        "neighbors": sum(len(v) for v in levels.values()),
        "by_type": {k: len(v) for k, v in sorted(levels.items())},
        "chambers": len(chambers),
        "thickness": min(panels.values()) if panels else 0,
    }
    logger.info("SL_%s link census at ell=%s: %s", n, lattice.ring.ell, census)
    return census


def _unitary_census(lattice, space, budget):
    preferred, own_type = is_preferred(lattice, space)
    if not preferred:
        raise PreconditionError("link census needs a preferred lattice")
    by_type = Counter()
    for _, sub in _between(lattice, budget):
        for candidate in (sub, sub.scaled(-1)):
            ok, vertex_type = is_preferred(candidate, space)
            if ok:
                by_type[vertex_type] += 1
    census = {
        "type": own_type,
        "neighbors": sum(by_type.values()),
        "by_type": dict(sorted(by_type.items())),
    }
    logger.info("U link census at ell=%s: %s", lattice.ring.ell, census)
    return census


def ball(lattice, radius, budget=DEFAULT_BUDGET):
    """Vertices of the SL building within ``radius`` of [L], and edges"""
    start = homothety_class(lattice)
    index = {start: 0}
    vertices = [start]
    edges = set()
    queue = deque([(start, 0)])
    while queue:
        vertex, dist = queue.popleft()
        if dist == radius:
            continue
        for _, sub in _between(vertex, budget):
            neighbor = homothety_class(sub)
            if neighbor not in index:
                if len(vertices) >= budget:
                    raise BudgetExceeded(f"ball exceeds {budget} vertices")
                index[neighbor] = len(vertices)
                vertices.append(neighbor)
                queue.append((neighbor, dist + 1))
            a, b = index[vertex], index[neighbor]
            edges.add((min(a, b), max(a, b)))
    return vertices, sorted(edges)


def to_dot(vertices, edges, name="building"):
    """Graphviz DOT text of an enumerated ball"""
    lines = [f"graph {name} {{"]
    for i, vertex in enumerate(vertices):
        lines.append(f'  v{i} [label="{vertex.label()}"];')
    for a, b in edges:
        lines.append(f"  v{a} -- v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------
@dataclass
class SkeletonReport:
    """Orbit representatives of s-simplices among faces of the base chamber"""

    s: int
    r: int
    representatives: list = field(default_factory=list)
    undecided: list = field(default_factory=list)

    def to_json(self):
        return {
            "s": self.s,
            "r": self.r,
            "representatives": self.representatives,
            "undecided": self.undecided,
        }


def resolution_skeleton(space, s):
    """U-orbits of s-simplices, separated by vertex-type multisets.

    U acts transitively on chambers, so every orbit meets the base chamber
    C(v) in a face. Faces with equal type multisets are reported as
    undecided.
    """
    r = space.witt_index
    if not 0 <= s <= r:
        raise PreconditionError(f"s={s} must lie in [0, r={r}]")
    chain = chamber_from_hyperbolic_basis_U(space)
    types = [is_preferred(L, space)[1] for L in chain.lattices]
    report = SkeletonReport(s, r)
    seen = {}
    for face in combinations(range(r + 1), s + 1):
        key = tuple(sorted(types[i] for i in face))
        if key in seen:
            report.undecided.append([list(seen[key]), list(face)])
            continue
        seen[key] = face
        report.representatives.append(
            {
                "positions": list(face),
                "vertex_types": list(key),
                "stabilized": [chain.lattices[i].to_json() for i in face],
            }
        )
    logger.info(
        "skeleton s=%s r=%s: %s orbits, %s undecided",
        s,
        r,
        len(report.representatives),
        len(report.undecided),
    )
    return report
