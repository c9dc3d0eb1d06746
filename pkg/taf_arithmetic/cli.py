# -*- coding: utf-8 -*-
"""Command line front end for the arithmetic engines.

Every subcommand builds a report (command, inputs, outputs, versions,
precision_used) and prints either a short text summary or, with --json,
the report itself. Exit codes: 0 success, 2 precondition error, 3
precision or budget exhausted, 64 usage error.
"""

from dataclasses import dataclass
from fractions import Fraction
import argparse
import logging
import sys
import time

from taf_arithmetic import (
    building,
    cache,
    congruence,
    greek,
    hermitian,
    hondatate,
    level1,
    newton,
)
from taf_arithmetic.config import (
    DEFAULT_BUDGET,
    DEFAULT_MMAX,
    DEFAULT_PREC,
    DEFAULT_SEARCH_CAP,
    configure_logger,
)
from taf_arithmetic.exact_arith import rat_to_str
from taf_arithmetic.exceptions import BudgetExceeded, PreconditionError, PrecisionError
from taf_arithmetic.modforms import WeightedForm, delta
from taf_arithmetic.reports import build_report, dumps

logger = logging.getLogger(__name__)

EX_OK = 0
EX_PRECONDITION = 2
EX_EXHAUSTED = 3
EX_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 64 instead of argparse's 2"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Outcome:
    inputs: dict
    outputs: dict
    text: str
    precision_used: int = None


# ----------------------------------------------------------
def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma separated integers, got {text!r}"
        )


def _rat_list(text):
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma separated rationals, got {text!r}"
        )


def _monomial(text):
    exponents = _int_list(text)
    if len(exponents) != 3:
        raise argparse.ArgumentTypeError(
            "a monomial is given as a,b,c for E4^a E6^b Delta^c"
        )
    return tuple(exponents)


def _place(text):
    return hermitian.INF if text == hermitian.INF else int(text)


def jsonable(value):
    """Exact JSON: Fractions as 'num/den' strings, tuples as lists, str keys"""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return rat_to_str(value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return int(value)
    if hasattr(value, "item"):
        # numpy scalars out of pandas frames
        return jsonable(value.item())
    raise TypeError(f"{type(value).__name__} is not an exact JSON value")


def _field(options):
    return hermitian.QuadImagField(options.d)


# ----------------------------------------------------------
def greek_alpha(options):
    verdict = greek.alpha_invariant_order(options.p, options.t, options.j)
    inputs = {"p": options.p, "t": options.t, "j": options.j}
    return Outcome(inputs, verdict.to_json(), verdict.describe())


def greek_beta(options):
    verdict = greek.beta_invariant_exists(options.p, options.i, options.j, options.k)
    inputs = {"p": options.p, "i": options.i, "j": options.j, "k": options.k}
    return Outcome(inputs, verdict.to_json(), verdict.describe())


def _warm_cache(options, t):
    prec = congruence.working_precision(t, options.ell, options.mmax, options.prec)
    statuses = cache.warm(cache.QExpansionCache(options.cache_dir), 2 * prec)
    logger.debug("q-expansion cache: %s", statuses)
    return prec


def _describe_group(group):
    if group.is_trivial:
        text = "trivial"
    else:
        text = f"order {group.order}, exponent {group.exponent}"
    if group.verdict:
        text += f" ({group.verdict})"
    return text


def congruence_a(options):
    prec = _warm_cache(options, options.t)
    group = congruence.compute_A(
        options.p, options.ell, options.t, options.j, options.mmax, prec
    )
    inputs = {
        "p": options.p,
        "ell": options.ell,
        "t": options.t,
        "j": options.j,
        "m_max": options.mmax,
    }
    return Outcome(inputs, group.to_json(), _describe_group(group), group.prec)


def congruence_b(options):
    prec = _warm_cache(options, options.t)
    group = congruence.compute_B(
        options.p, options.ell, options.t, options.j, options.k, options.mmax, prec
    )
    inputs = {
        "p": options.p,
        "ell": options.ell,
        "t": options.t,
        "j": options.j,
        "k": options.k,
        "m_max": options.mmax,
    }
    return Outcome(inputs, group.to_json(), _describe_group(group), group.prec)


def _monomial_form(exponents, prec, store):
    a, b, c = exponents
    e4, _ = cache.eisenstein(store, 4, prec)
    e6, _ = cache.eisenstein(store, 6, prec)
    pole = max(0, -c)
    series = e4**a * e6**b * delta(prec) ** (c + pole)
    label = f"E4^{a}*E6^{b}*Delta^{c}"
    return WeightedForm(4 * a + 6 * b + 12 * c, pole, series, label)


def congruence_serre(options):
    prec = options.prec or DEFAULT_PREC
    store = cache.QExpansionCache(options.cache_dir)
    f1 = _monomial_form(options.f1, prec, store)
    f2 = _monomial_form(options.f2, prec, store)
    verdict = congruence.serre_congruence_check(f1, f2, options.p, options.k)
    inputs = {
        "p": options.p,
        "k": options.k,
        "f1": list(options.f1),
        "f2": list(options.f2),
    }
    outputs = {"weights": [f1.weight, f2.weight], "verdict": verdict}
    return Outcome(inputs, outputs, verdict, prec)


def newton_polygon(options):
    polygon = newton.parse_slopes(options.slopes)
    outputs = polygon.to_json()
    outputs["polarizable"] = newton.is_polarizable(polygon)
    outputs["dual"] = [list(s) for s in newton.dual(polygon).segments]
    points = ",".join(f"({x},{y})" for x, y in newton.breakpoints(polygon))
    text = f"breakpoints {points}\n{newton.render_ascii(polygon)}"
    return Outcome({"slopes": options.slopes}, outputs, text)


def hondatate_split(options):
    ptype = hondatate.split_height_n_type(options.n, options.p)
    invariants = hondatate.invariants_and_dimension(ptype)
    report = hondatate.polygon_of_type(ptype, invariants.m)
    outputs = {
        "type": ptype.to_json(),
        "invariants": invariants.to_json(),
        "realizable": report.realizable,
        "polygon": report.polygon.to_json() if report.polygon else None,
    }
    text = f"m={invariants.m}, dim={invariants.dimension}"
    return Outcome({"n": options.n, "p": options.p}, outputs, text)


def hondatate_weil(options):
    w = hondatate.WeilInteger(options.d, options.a, options.b, options.q)
    if options.r > 1:
        w = hondatate.base_change(w, options.r)
    status, problems = hondatate.verify_weil_integer(w)
    outputs = {
        "pi": {"d": w.d, "a": w.a, "b": w.b, "q": w.q},
        "status": status,
        "problems": problems,
    }
    text = status if not problems else f"{status}: {'; '.join(problems)}"
    if status == "ok":
        ptype = hondatate.type_of_weil_integer(w)
        invariants = hondatate.invariants_and_dimension(ptype)
        outputs["type"] = ptype.to_json()
        outputs["invariants"] = invariants.to_json()
        text = f"ok, m={invariants.m}, dim={invariants.dimension}"
    inputs = {
        "d": options.d,
        "a": options.a,
        "b": options.b,
        "q": options.q,
        "r": options.r,
    }
    return Outcome(inputs, outputs, text)


def forms_local(options):
    F = _field(options)
    n = options.n or len(options.entries)
    result = hermitian.local_class_U(F, n, options.place, options.entries)
    inputs = {
        "d": options.d,
        "n": n,
        "place": options.place,
        "entries": options.entries,
    }
    return Outcome(inputs, result.to_json(), f"{result.kind} {result.value}")


def forms_global(options):
    F = _field(options)
    spec = hermitian.local_data_of_form(F, options.entries)
    exists = hermitian.global_exists_U(spec)
    gu = hermitian.global_classify_GU(spec)
    outputs = {"local_data": spec.to_json(), "exists_U": exists, "GU": gu.to_json()}
    text = f"exists={exists}, GU invariant {list(gu.invariant)}"
    return Outcome({"d": options.d, "entries": options.entries}, outputs, text)


def forms_table(options):
    rows = hermitian.isotropy_table(_field(options), options.ell, options.n)
    text = "\n".join(
        f"disc {row['disc']}, Witt index {row['witt_index']}: {row['gram']}"
        for row in rows
    )
    inputs = {"d": options.d, "ell": options.ell, "n": options.n}
    return Outcome(inputs, {"rows": rows}, text)


def _space(options):
    return building.HermitianSpace.standard(
        _field(options),
        options.ell,
        options.n,
        options.branch,
        options.prec or DEFAULT_PREC,
    )


def building_chamber(options):
    if options.d is None:
        ring = building.LocalRing(options.ell, prec=options.prec or DEFAULT_PREC)
        identity = [[int(i == j) for i in range(options.n)] for j in range(options.n)]
        chain = building.chamber_from_basis_GL(ring, identity)
        outputs = {"group": "GL", "chain": chain.to_json()}
    else:
        space = _space(options)
        chain = building.chamber_from_hyperbolic_basis_U(space)
        outputs = {"group": "U", "space": space.to_json(), "chain": chain.to_json()}
    outputs["dimension"] = len(chain) - 1
    text = "\n".join(lattice.label() for lattice in chain.lattices)
    inputs = {
        "d": options.d,
        "ell": options.ell,
        "n": options.n,
        "branch": options.branch,
    }
    return Outcome(inputs, outputs, text, options.prec or DEFAULT_PREC)


def building_ball(options):
    ring = building.LocalRing(options.ell, prec=options.prec or DEFAULT_PREC)
    start = building.LocalLattice.standard(ring, options.n)
    vertices, edges = building.ball(start, options.radius, options.budget)
    census = building.link_census(start, budget=options.budget)
    outputs = {
        "vertices": [v.label() for v in vertices],
        "edges": [list(e) for e in edges],
        "census": census,
    }
    if options.dot:
        text = building.to_dot(vertices, edges).rstrip("\n")
    else:
        text = f"{len(vertices)} vertices, {len(edges)} edges"
    inputs = {"ell": options.ell, "n": options.n, "radius": options.radius}
    return Outcome(inputs, outputs, text, options.prec or DEFAULT_PREC)


def building_skeleton(options):
    space = _space(options)
    report = building.resolution_skeleton(space, options.s)
    outputs = report.to_json()
    text = (
        f"{len(report.representatives)} orbit(s) of {options.s}-simplices, "
        f"{len(report.undecided)} undecided"
    )
    inputs = {
        "d": options.d,
        "ell": options.ell,
        "n": options.n,
        "branch": options.branch,
        "s": options.s,
    }
    return Outcome(inputs, outputs, text, options.prec or DEFAULT_PREC)


def level1_classgroup(options):
    group = level1.class_group(_field(options))
    forms = " ".join(f.label() for f in group.forms)
    return Outcome({"d": options.d}, group.to_json(), f"h={group.order}: {forms}")


def level1_genprime(options):
    result = level1.find_generator_prime(_field(options), options.p, options.cap)
    a, b = result.to_json()["t"]
    text = f"ell={result.ell}, t=({a},{b}), q={result.q} mod {options.p ** 2}"
    inputs = {"d": options.d, "p": options.p, "cap": options.cap}
    return Outcome(inputs, result.to_json(), text)


def level1_jorders(options):
    if options.d is not None:
        k = level1.find_generator_prime(_field(options), options.p, options.cap)
    elif options.k is not None:
        k = options.k
    else:
        raise PreconditionError("jorders needs either -k or -d")
    t_values = list(range(2, options.tmax + 1, 2))
    prec = options.prec or DEFAULT_PREC
    table = level1.j_homotopy_orders(options.p, k, t_values, prec)
    text = "\n".join(
        f"t={row.t} stem={row.stem} order={row.order}"
        for row in table.rows.itertuples()
    )
    inputs = {"p": options.p, "k": options.k, "d": options.d, "tmax": options.tmax}
    return Outcome(inputs, table.to_json(), text, prec)


def level1_decomp(options):
    result = level1.decomposition_count(_field(options), options.p)
    text = f"f={result.f}, {result.factors} factor(s), h={result.h}"
    return Outcome({"d": options.d, "p": options.p}, result.to_json(), text)


def level1_points(options):
    result = level1.fpbar_points(_field(options), options.p)
    text = f"{result.h} point(s) in {len(result.orbits)} orbit(s), mass {result.mass}"
    return Outcome({"d": options.d, "p": options.p}, result.to_json(), text)


def level1_sunits(options):
    F = _field(options)
    primes = [level1.prime_from_label(F, label) for label in options.primes.split(",")]
    basis = level1.s_unit_basis(F, primes)
    outputs = {
        "units": level1.unit_group_rank(F, primes, options.p).to_json(),
        "basis": [
            {"vector": entry["vector"], "element": list(entry["element"])}
            for entry in basis
        ],
    }
    text = f"rank {len(primes)}"
    if options.p is not None:
        closure = level1.s_unit_closure_index(F, options.p, primes)
        outputs["closure"] = closure.to_json()
        index = "infinite" if closure.index is None else closure.index
        text += f", closure index {index} at p={options.p}"
    inputs = {"d": options.d, "primes": options.primes, "p": options.p}
    return Outcome(inputs, outputs, text)


# ----------------------------------------------------------
def _add(subparsers, name, handler, help):
    parser = subparsers.add_parser(name, help=help)
    parser.set_defaults(handler=handler)
    return parser


def get_parser():
    """Return argument parser."""
    parser = _Parser(prog="taf-arithmetic", description=__doc__)
    parser.add_argument(
        "-v",
        "--verbose",
        action="store_true",
        dest="verbose",
        default=False,
        help="Verbose output",
    )
    parser.add_argument("--json", action="store_true", help="Print the JSON report")
    parser.add_argument("--prec", type=int, default=None, help="Working precision")
    parser.add_argument("--cache-dir", default=None, help="q-expansion cache directory")
    parser.add_argument(
        "--mmax", type=int, default=DEFAULT_MMAX, help="Largest pole order at the cusp"
    )
    parser.add_argument(
        "--budget", type=int, default=DEFAULT_BUDGET, help="Enumeration budget"
    )
    parser.add_argument(
        "--timing", action="store_true", help="Add elapsed time to the report"
    )
    commands = parser.add_subparsers(dest="command")

    group = commands.add_parser("greek", help="Greek letter invariants")
    actions = group.add_subparsers(dest="action")
    sub = _add(actions, "alpha", greek_alpha, "x_{i/j} at chromatic level 1")
    sub.add_argument("-p", type=int, required=True)
    sub.add_argument("-t", type=int, required=True)
    sub.add_argument("-j", type=int, default=1)
    sub = _add(actions, "beta", greek_beta, "x_{i/j,k} at chromatic level 2")
    sub.add_argument("-p", type=int, required=True)
    sub.add_argument("-i", type=int, required=True)
    sub.add_argument("-j", type=int, default=1)
    sub.add_argument("-k", type=int, default=1)

    group = commands.add_parser("congruence", help="Eisenstein congruence groups")
    actions = group.add_subparsers(dest="action")
    sub = _add(actions, "A", congruence_a, "A_(t;j)")
    sub.add_argument("-j", type=int, default=1)
    sub = _add(actions, "B", congruence_b, "B_(t;j,k)")
    sub.add_argument("-j", type=int, required=True)
    sub.add_argument("-k", type=int, default=1)
    for sub in actions.choices.values():
        sub.add_argument("-p", type=int, required=True)
        sub.add_argument("-t", type=int, required=True)
        sub.add_argument("--ell", type=int, default=2)
    sub = _add(actions, "serre", congruence_serre, "Serre's weight congruence")
    sub.add_argument("-p", type=int, required=True)
    sub.add_argument("-k", type=int, default=1)
    sub.add_argument("--f1", type=_monomial, required=True, help="a,b,c")
    sub.add_argument("--f2", type=_monomial, required=True, help="a,b,c")

    sub = _add(commands, "newton", newton_polygon, "Newton polygon from slopes")
    sub.add_argument("--slopes", required=True, help="e.g. 1/3,1/2,1 or 1/2x3")

    group = commands.add_parser("hondatate", help="p-adic types and invariants")
    actions = group.add_subparsers(dest="action")
    sub = _add(actions, "split", hondatate_split, "Split height n type")
    sub.add_argument("-n", type=int, required=True)
    sub.add_argument("-p", type=int, default=None)
    sub = _add(
        actions, "weil", hondatate_weil, "Type of a Weil q-integer a + b sqrt(d)"
    )
    sub.add_argument("-d", type=int, required=True)
    sub.add_argument("-a", type=int, required=True)
    sub.add_argument("-b", type=int, required=True)
    sub.add_argument("-q", type=int, required=True)
    sub.add_argument("-r", type=int, default=1, help="Base change degree")

    group = commands.add_parser("forms", help="Hermitian forms")
    actions = group.add_subparsers(dest="action")
    sub = _add(actions, "local", forms_local, "Local class of a diagonal form")
    sub.add_argument("-n", type=int, default=None)
    sub.add_argument("--place", type=_place, required=True, help="a prime or 'inf'")
    _add(actions, "global", forms_global, "Local data and global classes")
    for sub in actions.choices.values():
        sub.add_argument("-d", type=int, required=True)
        sub.add_argument("--entries", type=_rat_list, required=True)
    sub = _add(actions, "table", forms_table, "Standard forms by discriminant")
    sub.add_argument("-d", type=int, required=True)
    sub.add_argument("--ell", type=int, required=True)
    sub.add_argument("-n", type=int, required=True)

    group = commands.add_parser("building", help="Bruhat-Tits buildings")
    actions = group.add_subparsers(dest="action")
    sub = _add(
        actions, "chamber", building_chamber, "Standard chamber (GL, or U with -d)"
    )
    sub.add_argument("-d", type=int, default=None)
    sub = _add(actions, "skeleton", building_skeleton, "Orbits of s-simplices under U")
    sub.add_argument("-d", type=int, required=True)
    sub.add_argument("-s", type=int, required=True)
    for sub in actions.choices.values():
        sub.add_argument("--branch", type=int, default=0)
    sub = _add(actions, "ball", building_ball, "Ball around the standard vertex (SL)")
    sub.add_argument("--radius", type=int, default=1)
    sub.add_argument("--dot", action="store_true", help="Print Graphviz DOT")
    for sub in actions.choices.values():
        sub.add_argument("--ell", type=int, required=True)
        sub.add_argument("-n", type=int, required=True)

    group = commands.add_parser("level1", help="Chromatic level 1 arithmetic")
    actions = group.add_subparsers(dest="action")
    _add(actions, "classgroup", level1_classgroup, "Class group of Q(sqrt d)")
    sub = _add(actions, "genprime", level1_genprime, "Generating split prime")
    sub.add_argument("-p", type=int, required=True)
    sub.add_argument("--cap", type=int, default=DEFAULT_SEARCH_CAP)
    for name, handler, help in (
        ("decomp", level1_decomp, "Factors of the level 1 moduli over p"),
        ("points", level1_points, "Fpbar points and Frobenius orbits"),
    ):
        sub = _add(actions, name, handler, help)
        sub.add_argument("-p", type=int, required=True)
    sub = _add(actions, "sunits", level1_sunits, "S-units and their closure index")
    sub.add_argument("--primes", required=True, help="prime labels, e.g. 13+,3")
    sub.add_argument("-p", type=int, default=None)
    for sub in actions.choices.values():
        sub.add_argument("-d", type=int, required=True)
    sub = _add(actions, "jorders", level1_jorders, "Orders in the image of J")
    sub.add_argument("-p", type=int, required=True)
    sub.add_argument("-k", type=int, default=None)
    sub.add_argument("-d", type=int, default=None)
    sub.add_argument("--cap", type=int, default=DEFAULT_SEARCH_CAP)
    sub.add_argument("--tmax", type=int, default=20)
    return parser


def _command(options):
    action = getattr(options, "action", None)
    return f"{options.command} {action}" if action else options.command


def run(argv=None, stdout=None):
    """Parse argv, run one command and print its result.

    Returns (exit code, report); the report is None unless the command
    succeeded.
    """
    stdout = stdout or sys.stdout
    parser = get_parser()
    try:
        options = parser.parse_args(argv)
    except SystemExit as e:
        return e.code or EX_OK, None
    handler = getattr(options, "handler", None)
    if handler is None:
        parser.print_usage(sys.stderr)
        return EX_USAGE, None

    start = time.perf_counter()
    try:
        outcome = handler(options)
    except PreconditionError as e:
        logger.error("%s: %s", _command(options), e)
        return EX_PRECONDITION, None
    except (PrecisionError, BudgetExceeded) as e:
        logger.error("%s: %s", _command(options), e)
        return EX_EXHAUSTED, None
    elapsed = time.perf_counter() - start if options.timing else None

    report = build_report(
        _command(options),
        jsonable(outcome.inputs),
        jsonable(outcome.outputs),
        outcome.precision_used,
        elapsed,
    )
    if options.json:
        print(dumps(report), file=stdout)
    else:
        print(outcome.text, file=stdout)
    return EX_OK, report


def main():
    """Call main command with args from parser.

    This method is called when you run 'bin/taf-arithmetic', this is
    configured in 'setup.py'.

    """
    options, _ = get_parser().parse_known_args()
    if options.verbose:
        log_level = logging.DEBUG
    else:
        log_level = logging.INFO
    configure_logger(log_level)
    code, _ = run()
    sys.exit(code)
