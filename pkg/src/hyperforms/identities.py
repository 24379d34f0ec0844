"""Registry of hypergeometric transformations and their numeric verification.

Each identity has the shape ``Gamma-ratio * pFq  ==  Gamma-ratio * pFq``.  The
two sides are built independently from the parameters and evaluated with
certified tails; a check passes when the two balls overlap and both are
narrow.  Parameters live on half-integer lattices so every Gamma factor is an
exact rational multiple of a power of sqrt(pi).
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .ball import BallReal
from .exact import PiMonomial, as_fraction, gamma_ratio, is_half_integer
from .hyper import PfqSpec, eval_prefactored

__all__ = [
    "IDENTITIES",
    "InadmissibleError",
    "Side",
    "SweepResult",
    "VerificationReport",
    "admissibility",
    "chain_check",
    "get_identity",
    "sweep",
    "verify_identity",
]

F = Fraction
H = Fraction(1, 2)


class InadmissibleError(ValueError):
    """Parameters violate a named admissibility predicate."""

    def __init__(self, predicate: str, detail: str = ""):
        super().__init__(f"{predicate}: {detail}" if detail else predicate)
        self.predicate = predicate


@dataclass(frozen=True)
class Side:
    """``scalar * prod Gamma(num) / prod Gamma(den) * pFq(spec)``."""

    gamma_num: tuple
    gamma_den: tuple
    upper: tuple
    lower: tuple
    argument: int = 1
    scalar: Fraction = F(1)

    def spec(self) -> PfqSpec:
        return PfqSpec(self.upper, self.lower, self.argument)

    def prefactor(self) -> PiMonomial:
        return gamma_ratio(self.gamma_num, self.gamma_den) * self.scalar

    def evaluate(self, digits: int) -> BallReal:
        return eval_prefactored(self.prefactor(), self.spec(), digits)


@dataclass(frozen=True)
class Identity:
    name: str
    params: tuple
    lattice: dict            # name -> "Z", "N" or "Z/2"
    lhs: Callable
    rhs: Callable
    constraints: tuple = ()  # (predicate name, callable(params) -> bool)
    sampler: dict = field(default_factory=dict)  # name -> (lo, hi)
    description: str = ""


def _vwp(a, rest, lower_extra=()):
    """Upper/lower lists of the very-well-poised series with parameters a; rest."""
    upper = (a, a / 2 + 1) + tuple(rest)
    lower = (a / 2,) + tuple(a - x + 1 for x in rest)
    return upper, lower


# -- identity builders -----------------------------------------------------

def _cat_lhs(p):
    n, c, d = p["n"], p["c"], p["d"]
    return Side((), (), (3 * n + 1, F(3, 2) * n + F(3, 2), n + H, n + 1, c, d),
                (F(3, 2) * n + H, 2 * n + F(3, 2), 2 * n + 1, 3 * n + 2 - c, 3 * n + 2 - d), -1)


def _cat_rhs(p):
    n, c, d = p["n"], p["c"], p["d"]
    return Side((4 * n + 3, 3 * n + 2 - c, 3 * n + 2 - d, 4 * n + 3 - c - d),
                (3 * n + 2, 4 * n + 3 - c, 4 * n + 3 - d, 3 * n + 2 - c - d),
                (2 * n + 1, n + F(3, 2), c / 2, c / 2 + H, d / 2, d / 2 + H),
                (n + H, 2 * n + 2 - c / 2, 2 * n + F(3, 2) - c / 2, 2 * n + 2 - d / 2, 2 * n + F(3, 2) - d / 2), 1)


def _ln2_lhs(p):
    x, a, b = p["x"], p["a"], p["b"]
    return Side((), (), (x, 2 * a), (2 * b - x,), -1)


def _ln2_rhs(p):
    x, a, b = p["x"], p["a"], p["b"]
    return Side((2 * b - x, 2 * b - 2 * a), (2 * b, 2 * b - 2 * a - x), (x, a, a + H), (b, b + H), 1)


def _pi2_lhs(p):
    a, b, c = p["a"], p["b"], p["c"]
    return Side((), (), (a, b, c), (-a + 2 * b + c, -a + b + 2 * c), 1)


def _pi2_rhs(p):
    a, b, c = p["a"], p["b"], p["c"]
    num = (-a / 2 + b + c + H, -3 * a / 2 + 2 * b + c + H,
           -a + b + 2 * c, -3 * a + 2 * b + 2 * c, -2 * a + 2 * b + 2 * c, -2 * a + 4 * b + 2 * c)
    den = (-a + b + c + H, -a + 2 * b + c + H,
           -3 * a / 2 + b + 2 * c, -5 * a / 2 + 2 * b + 2 * c, -a + 2 * b + 2 * c, -3 * a + 4 * b + 2 * c)
    upper = (-2 * a + 2 * b + 2 * c - 1, c - a / 2, -3 * a / 2 + b + c, a / 2, b - a / 2)
    lower = (-3 * a / 2 + 2 * b + c, -a / 2 + b + c, -5 * a / 2 + 2 * b + 2 * c, -3 * a / 2 + b + 2 * c)
    return Side(num, den, upper, lower, 1)


def _apery_lhs(p):
    n = p["n"]
    return Side((4 * n + 2, 4 * n + 2, 2 * n + 1, 2 * n + 1), (3 * n + F(3, 2),) * 4,
                (4 * n + 1,) + (n + H,) * 4, (3 * n + F(3, 2),) * 4, 1)


def _apery_rhs(p):
    n = p["n"]
    return Side((), (), (2 * n + 1,) * 3, (4 * n + 2,) * 2, 1)


def _t3240_lhs(p):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    return Side((), (), (a, b, c), (d, d - b + c), 1)


def _t3240_rhs(p):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    return Side((2 * d, 2 * d - 2 * b - a, d - b + c, d - a + c),
                (2 * d - 2 * b, 2 * d - a, d + c, d - b - a + c),
                (d - H, d / 2 + F(3, 4), d / 2 - c / 2, b, a / 2, a / 2 + H, -c / 2 + d / 2 + H),
                (d / 2 - F(1, 4), c / 2 + d / 2 + H, -b + d + H, -a / 2 + d + H, d - a / 2, c / 2 + d / 2), 1)


def _vwp_side(p):
    a = p["a"]
    upper, lower = _vwp(a, (p["b"], p["c"], p["d"], p["e"], p["f"]))
    return Side((), (), upper, lower, 1)


def _t7635_rhs(p):
    a, b, c, d, e, f = (p[k] for k in "abcdef")
    s = c + d + e + f
    A = 3 * a - 2 * b - s + 2
    num = (a - c + 1, a - d + 1, a - e + 1, a - f + 1, 3 * a - 2 * b - s + 3, 2 * a - b - s + 2)
    den = (a + 1, b, 2 * a - b - c - d - e + 2, 2 * a - b - c - d - f + 2,
           2 * a - b - c - e - f + 2, 2 * a - b - d - e - f + 2)
    rest = (a - b - c + 1, a - b - d + 1, a - b - e + 1, a - b - f + 1, 2 * a - b - s + 2)
    upper = (A, 3 * a / 2 - b - s / 2 + 2) + rest
    lower = (3 * a / 2 - b - s / 2 + 1, 2 * a - b - d - e - f + 2, 2 * a - b - c - e - f + 2,
             2 * a - b - c - d - f + 2, 2 * a - b - c - d - e + 2, a - b + 1)
    return Side(num, den, upper, lower, 1)


def _t7634_rhs(p):
    a, b, c, d, e, f = (p[k] for k in "abcdef")
    num = (a - e + 1, a - f + 1, 2 * a - b - c - d + 2, 2 * a - b - c - d - e - f + 2)
    den = (a + 1, a - e - f + 1, 2 * a - b - c - d - e + 2, 2 * a - b - c - d - f + 2)
    upper = (2 * a - b - c - d + 1, a - (b + c + d) / 2 + F(3, 2), a - c - d + 1, a - b - d + 1,
             a - b - c + 1, e, f)
    lower = (a - (b + c + d) / 2 + H, a - b + 1, a - c + 1, a - d + 1,
             2 * a - b - c - d - e + 2, 2 * a - b - c - d - f + 2)
    return Side(num, den, upper, lower, 1)


def _chain1_rhs(p):
    """3F2 after T3240 and one application of T7635."""
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    num = (2 * d, d - a / 2, -a / 2 + d + H, -b + d + H, c / 2 + d / 2,
           -a - 2 * b + 2 * d, -b + c + d, -a - b + F(3, 2) * c + F(3, 2) * d + H)
    den = (d + H, 2 * d - a, 2 * d - 2 * b, d / 2 - c / 2, c + d,
           -a / 2 - b + c + d, -a / 2 - b + c + d + H, -a - b + c / 2 + F(3, 2) * d + H)
    upper = (-a - b + F(3, 2) * (c + d) - H, -a / 2 - b / 2 + F(3, 4) * (c + d) + F(3, 4),
             -a / 2 + c / 2 + d / 2, c, -a - b + c + d, -b + c / 2 + d / 2 + H, -a / 2 + c / 2 + d / 2 + H)
    lower = (-a / 2 - b / 2 + F(3, 4) * (c + d) - F(1, 4), -a / 2 - b + c + d + H,
             -a - b + c / 2 + F(3, 2) * d + H, c / 2 + d / 2 + H, -a + c + d, -a / 2 - b + c + d)
    return Side(num, den, upper, lower, 1)


def _chain2_rhs(p):
    """3F2 after T3240, T7635 and T7634."""
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    num = (2 * d, d - a / 2, c / 2 + d / 2, -a - 2 * b + 2 * d,
           -a + c + d, -b + c + d, -a / 2 - b + c / 2 + F(3, 2) * d + 1)
    den = (d + H, 2 * d - a, 2 * d - 2 * b, c + d,
           -a / 2 + c / 2 + d / 2 - H, -a / 2 - b + c + d + H, -a - b + c / 2 + F(3, 2) * d + H)
    upper = (-a / 2 - b + c / 2 + F(3, 2) * d, -a / 4 - b / 2 + c / 4 + F(3, 4) * d + 1,
             -a / 2 + c / 2 + d / 2 + H, -c / 2 + d / 2 + H, a / 2 + H, -a / 2 - b + d + H, -b + c / 2 + d / 2 + H)
    lower = (-a / 4 - b / 2 + c / 4 + F(3, 4) * d, -b + d + H, -a / 2 - b + c + d + H,
             -a - b + c / 2 + F(3, 2) * d + H, c / 2 + d / 2 + H, -a / 2 + d + H)
    return Side(num, den, upper, lower, 1)


def _3f2_7f6_rhs(p):
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    num = (2 * d, -a / 2 + d + H, c / 2 + d / 2 + H, -a - 2 * b + 2 * d,
           -a + c + d, -b + c + d, -a / 2 - b + c / 2 + F(3, 2) * d)
    den = (d + H, 2 * d - a, 2 * d - 2 * b, c + d,
           -a / 2 + c / 2 + d / 2 + H, -a / 2 - b + c + d, -a - b + c / 2 + F(3, 2) * d)
    upper = (-a / 2 - b + c / 2 + F(3, 2) * d - 1, -a / 4 - b / 2 + c / 4 + F(3, 4) * d + H,
             -b + c / 2 + d / 2, -a / 2 - b + d, a / 2, d / 2 - c / 2, -a / 2 + c / 2 + d / 2 - H)
    lower = (-a / 4 - b / 2 + c / 4 + F(3, 4) * d - H, d - a / 2, c / 2 + d / 2,
             -a - b + c / 2 + F(3, 2) * d, -a / 2 - b + c + d, -b + d + H)
    return Side(num, den, upper, lower, 1)


_CHAIN_LATTICE = {"a": "Z", "b": "Z/2", "c": "Z/2", "d": "Z/2"}
_CHAIN_CONSTRAINTS = (("c+d integral", lambda p: (p["c"] + p["d"]).denominator == 1),)
_CHAIN_SAMPLER = {"a": (1, 4), "b": (F(1, 2), 3), "c": (F(1, 2), 4), "d": (F(1, 2), 8)}
_SEVEN = {"a": "Z/2", "b": "Z/2", "c": "Z/2", "d": "Z/2", "e": "Z/2", "f": "Z/2"}
_SEVEN_SAMPLER = {"a": (2, 10), "b": (F(1, 2), 3), "c": (F(1, 2), 3), "d": (F(1, 2), 3),
                  "e": (F(1, 2), 3), "f": (F(1, 2), 3)}

IDENTITIES: dict[str, Identity] = {
    "TH_CAT": Identity("TH_CAT", ("n", "c", "d"), {"n": "N", "c": "Z/2", "d": "Z/2"}, _cat_lhs, _cat_rhs,
                       sampler={"n": (0, 3), "c": (F(1, 2), 4), "d": (F(1, 2), 4)},
                       description="6F5(-1) very-well-poised = Gamma ratio * 6F5(1)"),
    "TH_LN2": Identity("TH_LN2", ("x", "a", "b"), {"x": "Z/2", "a": "Z/2", "b": "Z/2"}, _ln2_lhs, _ln2_rhs,
                       sampler={"x": (F(1, 2), 8), "a": (F(1, 2), 8), "b": (F(1, 2), 8)},
                       description="2F1(x, 2a; 2b-x; -1) = Gamma ratio * 3F2(x, a, a+1/2; b, b+1/2; 1)"),
    "TH_PI2": Identity("TH_PI2", ("a", "b", "c"), {"a": "Z", "b": "Z/2", "c": "Z/2"}, _pi2_lhs, _pi2_rhs,
                       sampler={"a": (1, 6), "b": (F(1, 2), 6), "c": (F(1, 2), 6)},
                       description="3F2(a, b, c; 2b+c-a, b+2c-a; 1) = Gamma ratio * 5F4(1)"),
    "EQ_2N1_4N2": Identity("EQ_2N1_4N2", ("n",), {"n": "N"}, _apery_lhs, _apery_rhs,
                           sampler={"n": (0, 19)},
                           description="Gamma ratio * 5F4(1) = 3F2(2n+1 x3; 4n+2 x2; 1)"),
    "T3240": Identity("T3240", ("a", "b", "c", "d"), {"a": "Z/2", "b": "Z/2", "c": "Z/2", "d": "Z/2"},
                      _t3240_lhs, _t3240_rhs,
                      sampler={"a": (F(1, 2), 4), "b": (F(1, 2), 3), "c": (F(1, 2), 4), "d": (F(1, 2), 8)},
                      description="3F2(a, b, c; d, d-b+c; 1) = Gamma ratio * 7F6(1)"),
    "T7635": Identity("T7635", tuple("abcdef"), _SEVEN, _vwp_side, _t7635_rhs, sampler=_SEVEN_SAMPLER,
                      description="very-well-poised 7F6(1) two-term transformation"),
    "T7634": Identity("T7634", tuple("abcdef"), _SEVEN, _vwp_side, _t7634_rhs, sampler=_SEVEN_SAMPLER,
                      description="very-well-poised 7F6(1) two-term transformation, second form"),
    "EQ_3F2_7F6": Identity("EQ_3F2_7F6", ("a", "b", "c", "d"), _CHAIN_LATTICE, _t3240_lhs, _3f2_7f6_rhs,
                           _CHAIN_CONSTRAINTS, _CHAIN_SAMPLER,
                           description="3F2(a, b, c; d, d-b+c; 1) = Gamma ratio * 7F6(1), end of the chain"),
    "CHAIN_1": Identity("CHAIN_1", ("a", "b", "c", "d"), _CHAIN_LATTICE, _t3240_lhs, _chain1_rhs,
                        _CHAIN_CONSTRAINTS, _CHAIN_SAMPLER,
                        description="intermediate: T3240 followed by T7635"),
    "CHAIN_2": Identity("CHAIN_2", ("a", "b", "c", "d"), _CHAIN_LATTICE, _t3240_lhs, _chain2_rhs,
                        _CHAIN_CONSTRAINTS, _CHAIN_SAMPLER,
                        description="intermediate: T3240, T7635, then T7634"),
}

_ALIASES = {"th-cat": "TH_CAT", "th-ln2": "TH_LN2", "th-pi2": "TH_PI2", "eq-2n1-4n2": "EQ_2N1_4N2",
            "eq-3f2-7f6": "EQ_3F2_7F6"}


def get_identity(name: str) -> Identity:
    key = _ALIASES.get(name.lower(), name.upper().replace("-", "_"))
    if key not in IDENTITIES:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(IDENTITIES)}")
    return IDENTITIES[key]


# -- admissibility -------------------------------------------------------------

def _on_lattice(x: Fraction, kind: str) -> bool:
    if kind == "Z":
        return x.denominator == 1
    if kind == "N":
        return x.denominator == 1 and x >= 0
    return is_half_integer(x)


def _side_problem(side: Side, label: str) -> tuple[str, str] | None:
    for g in side.gamma_num + side.gamma_den:
        g = as_fraction(g)
        if not is_half_integer(g):
            return (f"{label}: gamma argument in Z/2", str(g))
        if g.denominator == 1 and g <= 0:
            return (f"{label}: gamma argument off poles", str(g))
    try:
        spec = side.spec()
    except ValueError as exc:
        return (f"{label}: parameter denominators 1, 2, 4", str(exc))
    N = spec.terminates_at()
    for b in spec.lower:
        if b.denominator == 1 and b <= 0:
            return (f"{label}: lower parameter off poles", str(b))
    if N is None:
        m = spec.margin()
        if spec.p != spec.q + 1:
            return (f"{label}: balanced p = q + 1", "")
        if spec.argument == 1 and m <= H:
            return (f"{label}: convergence margin > 1/2 at z = 1", str(m))
        if spec.argument == -1 and m <= -1:
            return (f"{label}: convergence margin > -1 at z = -1", str(m))
    return None


def admissibility(identity: Identity | str, params: Mapping) -> tuple[str, str] | None:
    """None if admissible, else (failed predicate name, detail)."""
    ident = get_identity(identity) if isinstance(identity, str) else identity
    missing = [k for k in ident.params if k not in params]
    if missing:
        return ("parameters present", ",".join(missing))
    p = {k: as_fraction(params[k]) for k in ident.params}
    for k, kind in ident.lattice.items():
        if not _on_lattice(p[k], kind):
            return (f"{k} on lattice {kind}", str(p[k]))
    for name, pred in ident.constraints:
        if not pred(p):
            return (name, "")
    for label, build in (("lhs", ident.lhs), ("rhs", ident.rhs)):
        prob = _side_problem(build(p), label)
        if prob:
            return prob
    return None


# -- verification --------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    identity: str
    params: dict
    digits: int
    lhs: BallReal
    rhs: BallReal
    passed: bool
    distance: Fraction

    @property
    def pass_(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "identity": self.identity,
            "params": {k: f"{v.numerator}/{v.denominator}" for k, v in self.params.items()},
            "digits": self.digits,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "pass": self.passed,
            "distance": format(float(self.distance), ".3e"),
        }


def compare_balls(x: BallReal, y: BallReal, digits: int) -> tuple[bool, Fraction]:
    tol = F(1, 10 ** (digits - 5))
    ok = x.overlaps(y) and x.rad_le(tol / 2) and y.rad_le(tol / 2)
    return ok, x.distance(y)


def verify_identity(identity: Identity | str, params: Mapping, digits: int = 40) -> VerificationReport:
    """Evaluate both sides independently and compare."""
    ident = get_identity(identity) if isinstance(identity, str) else identity
    prob = admissibility(ident, params)
    if prob:
        raise InadmissibleError(*prob)
    p = {k: as_fraction(params[k]) for k in ident.params}
    lhs = ident.lhs(p).evaluate(digits)
    rhs = ident.rhs(p).evaluate(digits)
    ok, dist = compare_balls(lhs, rhs, digits)
    return VerificationReport(ident.name, p, digits, lhs, rhs, ok, dist)


# -- sweeps --------------------------------------------------------------------

@dataclass(frozen=True)
class SweepResult:
    identity: str
    reports: list
    skipped: int
    skipped_by: dict

    @property
    def failures(self) -> list:
        return [r for r in self.reports if not r.passed]

    @property
    def all_pass(self) -> bool:
        return bool(self.reports) and not self.failures

    def to_json(self) -> dict:
        return {"identity": self.identity, "count": len(self.reports), "passed": len(self.reports) - len(self.failures),
                "skipped": self.skipped, "skipped_by": dict(sorted(self.skipped_by.items())),
                "reports": [r.to_json() for r in self.reports]}


def _grid(lo, hi, kind) -> list:
    lo, hi = as_fraction(lo), as_fraction(hi)
    step = F(1) if kind in ("Z", "N") else H
    start = -((-lo) // step) * step  # first lattice point >= lo
    out = []
    x = start
    while x <= hi:
        out.append(F(x))
        x += step
    return out


def sample_points(identity: Identity | str, count: int, seed: int = 0, ranges: Mapping | None = None,
                  max_draws: int | None = None):
    """Deterministic admissible samples; returns (points, skipped count, skips by predicate)."""
    ident = get_identity(identity) if isinstance(identity, str) else identity
    rng = random.Random(seed)
    ranges = {**ident.sampler, **(ranges or {})}
    grids = {k: _grid(*ranges[k], ident.lattice[k]) for k in ident.params}
    total = 1
    for g in grids.values():
        total *= len(g)
    points, seen, skipped, by = [], set(), 0, {}
    draws = 0
    max_draws = max_draws or 200 * count + 100
    while len(points) < count and draws < max_draws and len(seen) < total:
        draws += 1
        p = {k: rng.choice(grids[k]) for k in ident.params}
        key = tuple(p[k] for k in ident.params)
        if key in seen:
            continue
        seen.add(key)
        prob = admissibility(ident, p)
        if prob:
            skipped += 1
            by[prob[0]] = by.get(prob[0], 0) + 1
            continue
        points.append(p)
    return points, skipped, by


def _verify_task(args):
    name, p, digits = args
    return verify_identity(name, p, digits)


def sweep(identity: Identity | str, count: int = 20, digits: int = 40, seed: int = 0,
          ranges: Mapping | None = None, points: list | None = None, workers: int = 1) -> SweepResult:
    """Verify ``count`` admissible sample points (or the explicit ``points``)."""
    ident = get_identity(identity) if isinstance(identity, str) else identity
    skipped, by = 0, {}
    if points is None:
        points, skipped, by = sample_points(ident, count, seed, ranges)
    else:
        keep = []
        for p in points:
            prob = admissibility(ident, p)
            if prob:
                skipped += 1
                by[prob[0]] = by.get(prob[0], 0) + 1
            else:
                keep.append(p)
        points = keep
    tasks = [(ident.name, p, digits) for p in points]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            reports = list(ex.map(_verify_task, tasks))  # map keeps input order
    else:
        reports = [_verify_task(t) for t in tasks]
    return SweepResult(ident.name, reports, skipped, by)


# -- proof chain ---------------------------------------------------------------

def _as_vwp(side: Side):
    """Read (a; b, c, d, e, f) off a very-well-poised 7F6 side, or None."""
    up, lo = list(side.upper), list(side.lower)
    if len(up) != 7 or len(lo) != 6:
        return None
    for i, a in enumerate(up):
        if a / 2 + 1 in up and a / 2 in lo:
            rest = list(up)
            rest.remove(a)
            rest.remove(a / 2 + 1)
            lows = list(lo)
            lows.remove(a / 2)
            if sorted(a - x + 1 for x in rest) == sorted(lows):
                return a, rest
    return None


def _same_side(s1: Side, s2: Side) -> bool:
    return (sorted(s1.upper) == sorted(s2.upper) and sorted(s1.lower) == sorted(s2.lower)
            and s1.prefactor() == s2.prefactor())


def _compose(outer: Side, inner: Side) -> Side:
    """outer's prefactor times inner (inner replaces outer's series)."""
    return Side(outer.gamma_num + inner.gamma_num, outer.gamma_den + inner.gamma_den,
                inner.upper, inner.lower, inner.argument, outer.scalar * inner.scalar)


def _step(side: Side, transform, target: Side) -> bool:
    """Is there an ordering of (b..f) for which ``transform`` maps side's 7F6 to target?"""
    import itertools
    got = _as_vwp(side)
    if got is None:
        return False
    a, rest = got
    tried = set()
    for perm in itertools.permutations(rest):
        if perm in tried:
            continue
        tried.add(perm)
        p = dict(zip("abcdef", (a,) + perm))
        try:
            new = _compose(side, transform(p))
            if _same_side(new, target):
                return True
        except (ValueError, ZeroDivisionError):
            continue
    return False


@dataclass(frozen=True)
class ChainReport:
    params: dict
    structural: dict
    numeric: list
    passed: bool

    def to_json(self) -> dict:
        return {"params": {k: str(v) for k, v in self.params.items()}, "structural": self.structural,
                "numeric": [r.to_json() for r in self.numeric], "pass": self.passed}


def chain_check(params: Mapping, digits: int = 40) -> ChainReport:
    """Check the T3240 -> T7635 -> T7634 -> T7635 chain at one parameter point.

    Structurally: each intermediate display is exactly the previous one with a
    transformation applied (same multiset of parameters, same exact prefactor).
    Numerically: every link, and the composed equality, is verified with balls.
    """
    p = {k: as_fraction(params[k]) for k in "abcd"}
    s0 = _t3240_rhs(p)
    s1, s2, s3 = _chain1_rhs(p), _chain2_rhs(p), _3f2_7f6_rhs(p)
    structural = {
        "T3240 then T7635 gives the first intermediate": _step(s0, _t7635_rhs, s1),
        "then T7634 gives the second intermediate": _step(s1, _t7634_rhs, s2),
        "then T7635 gives the final 7F6 form": _step(s2, _t7635_rhs, s3),
    }
    numeric = [verify_identity(name, p, digits) for name in ("T3240", "CHAIN_1", "CHAIN_2", "EQ_3F2_7F6")]
    passed = all(structural.values()) and all(r.passed for r in numeric)
    return ChainReport(p, structural, numeric, passed)
