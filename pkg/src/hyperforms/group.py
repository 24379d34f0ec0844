"""The order-120 group acting on the ten-parameter model of a 3F2(1) series.

A parameter matrix stores ten numbers in the slot order

    c00, c11, c12, c13, c21, c22, c23, c31, c32, c33

and a group element is a permutation ``p`` of these slots acting by
``image[i] = m[p[i]]``.  The four generators are the involutions swapping two
upper parameters, two upper parameters, the two lower parameters, and the
Thomae-type swap.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import mpmath

from .ball import BallReal, const_eval
from .exact import as_fraction, gamma_ratio
from .hyper import PfqSpec, eval_prefactored

__all__ = [
    "GENERATORS",
    "ParamMatrix",
    "SLOTS",
    "apply",
    "build_matrix",
    "classify_half_integer_reps",
    "compose",
    "alternative_representatives",
    "generate_group",
    "lattice_fit",
    "orbit_invariant_check",
    "record_matrix",
]

SLOTS = ("c00", "c11", "c12", "c13", "c21", "c22", "c23", "c31", "c32", "c33")
_IDX = {s: i for i, s in enumerate(SLOTS)}
HALF_SLOTS = ("c13", "c23", "c31", "c32")


def _perm(*cycles: tuple) -> tuple:
    p = list(range(10))
    for x, y in cycles:
        i, j = _IDX[x], _IDX[y]
        p[i], p[j] = j, i
    return tuple(p)


IDENTITY = tuple(range(10))
GENERATORS = {
    "a1": _perm(("c11", "c21"), ("c12", "c22"), ("c13", "c23")),
    "a2": _perm(("c21", "c31"), ("c22", "c32"), ("c23", "c33")),
    "b": _perm(("c12", "c13"), ("c22", "c23"), ("c32", "c33")),
    "h": _perm(("c00", "c22"), ("c11", "c33"), ("c13", "c31")),
}


def compose(p: tuple, q: tuple) -> tuple:
    """Permutation acting as ``apply(apply(m, q), p)``: first q, then p."""
    return tuple(q[p[i]] for i in range(10))


@dataclass(frozen=True)
class ParamMatrix:
    entries: tuple  # ten Fractions in SLOTS order

    def __post_init__(self):
        e = tuple(as_fraction(x) for x in self.entries)
        if len(e) != 10:
            raise ValueError("a parameter matrix has ten entries")
        object.__setattr__(self, "entries", e)

    def __getitem__(self, slot: str) -> Fraction:
        return self.entries[_IDX[slot]]

    def to_json(self) -> dict:
        return {s: f"{v.numerator}/{v.denominator}" for s, v in zip(SLOTS, self.entries)}

    @classmethod
    def from_json(cls, data: Mapping) -> "ParamMatrix":
        return cls(tuple(Fraction(data[s]) for s in SLOTS))

    def parameters(self) -> tuple | None:
        """(a1, a2, a3, b2, b3) if the entries satisfy the model's linear relations, else None."""
        a = [self[f"c{j}1"] + 1 for j in (1, 2, 3)]
        b2 = self["c12"] + a[0] + 1
        b3 = self["c13"] + a[0] + 1
        for j in (2, 3):
            if self[f"c{j}2"] + a[j - 1] + 1 != b2 or self[f"c{j}3"] + a[j - 1] + 1 != b3:
                return None
        if self["c00"] != b2 + b3 - sum(a) - 1:
            return None
        return (a[0], a[1], a[2], b2, b3)

    def pretty(self) -> str:
        def f(x):
            return str(x)
        rows = [f"[{f(self['c00'])}]"]
        for j in (1, 2, 3):
            rows.append("  " + "  ".join(f(self[f"c{j}{k}"]) for k in (1, 2, 3)))
        return "\n".join(rows)


def build_matrix(a1, a2, a3, b2, b3) -> ParamMatrix:
    a = [as_fraction(x) for x in (a1, a2, a3)]
    b = {2: as_fraction(b2), 3: as_fraction(b3)}
    c = {"c00": b[2] + b[3] - sum(a) - 1}
    for j in (1, 2, 3):
        c[f"c{j}1"] = a[j - 1] - 1
        for k in (2, 3):
            c[f"c{j}{k}"] = b[k] - a[j - 1] - 1
    return ParamMatrix(tuple(c[s] for s in SLOTS))


def record_matrix(x, a, b) -> ParamMatrix:
    """Matrix for the 3F2 side reached from the 2F1(x+1, a+2; b+3; -1) series.

    Through the log 2 transformation with parameters (x+1, (a+2)/2, (x+b+4)/2)
    the 3F2 has upper (x+1, (a+3)/2, (a+2)/2) and lower ((x+b+5)/2, (x+b+4)/2).
    """
    x, a, b = (as_fraction(v) for v in (x, a, b))
    return build_matrix(x + 1, (a + 3) / 2, (a + 2) / 2, (x + b + 5) / 2, (x + b + 4) / 2)


def apply(m: ParamMatrix, p: tuple) -> ParamMatrix:
    return ParamMatrix(tuple(m.entries[p[i]] for i in range(10)))


@lru_cache(maxsize=None)
def generate_group(generators: tuple | None = None) -> frozenset:
    """Closure of the generators under composition (breadth-first)."""
    gens = tuple(GENERATORS.values()) if generators is None else generators
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(s, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return frozenset(seen)


def alternative_representatives() -> list:
    """Five slot permutations giving the standard alternative matrices."""
    rows = [
        ("c22", "c33", "c12", "c31", "c21", "c00", "c23", "c13", "c32", "c11"),
        ("c12", "c11", "c00", "c13", "c33", "c22", "c31", "c23", "c32", "c21"),
        ("c33", "c22", "c21", "c13", "c12", "c11", "c23", "c31", "c32", "c00"),
        ("c11", "c00", "c21", "c31", "c12", "c33", "c23", "c13", "c32", "c22"),
        ("c21", "c22", "c33", "c13", "c00", "c11", "c31", "c23", "c32", "c12"),
    ]
    return [tuple(_IDX[s] for s in r) for r in rows]


def half_pattern_stabilizer() -> list:
    """Group elements mapping the half-integer slot set onto itself."""
    half = {_IDX[s] for s in HALF_SLOTS}
    return sorted(g for g in generate_group() if {g[i] for i in half} == half)


def _is_cond(params) -> bool:
    a1, a2, a3, b2, b3 = params
    return all(x.denominator == 1 for x in (a1, a2, b2)) and all(x.denominator == 2 for x in (a3, b3))


def classify_half_integer_reps(m: ParamMatrix) -> list:
    """The 12 representatives with entries c13, c23, c31, c32 in Z + 1/2.

    Built from the original, the five alternative images and their a1-images,
    then cross-checked against a brute-force filter over the whole orbit.
    """
    params = m.parameters()
    if params is None or not _is_cond(params):
        raise ValueError("matrix does not come from integer a1, a2, b2 and half-odd a3, b3")
    a1 = GENERATORS["a1"]
    base = [IDENTITY] + alternative_representatives()
    perms = base + [compose(a1, g) for g in base]
    brute = set(half_pattern_stabilizer())
    if set(perms) != brute or len(brute) != 12:
        raise AssertionError("alternative representatives disagree with the orbit filter")
    reps = [apply(m, p) for p in perms]
    for r in reps:
        for s in HALF_SLOTS:
            if r[s].denominator != 2:
                raise AssertionError(f"entry {s} of a representative is not half-odd")
    return reps


# -- orbit invariance --------------------------------------------------------

def invariant_side(m: ParamMatrix):
    """(prefactor, spec) of H(m) / (Gamma(c00+1) Gamma(c21+1) Gamma(c31+1) Gamma(c22+1) Gamma(c33+1)).

    Returns None when the matrix is not a convergent, pole-free 3F2(1).
    """
    params = m.parameters()
    if params is None:
        return None
    a1, a2, a3, b2, b3 = params
    num = (a2, b2 - a2, a3, b3 - a3)
    den = (b2, b3) + tuple(m[s] + 1 for s in ("c00", "c21", "c31", "c22", "c33"))
    for g in num + den:
        if (2 * g).denominator != 1 or (g.denominator == 1 and g <= 0):
            return None
    for x in (b2, b3):
        if x.denominator == 1 and x <= 0:
            return None
    try:
        spec = PfqSpec((a1, a2, a3), (b2, b3), 1)
    except ValueError:
        return None
    if spec.terminates_at() is None and spec.margin() <= Fraction(1, 2):
        return None
    return gamma_ratio(num, den), spec


@dataclass(frozen=True)
class OrbitReport:
    matrix: ParamMatrix
    digits: int
    evaluated: int
    skipped: int
    distinct: int
    values: list
    passed: bool

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_json(), "digits": self.digits, "evaluated": self.evaluated,
                "skipped": self.skipped, "distinct_matrices": self.distinct, "pass": self.passed,
                "values": [v.to_json() for v in self.values[:5]]}


def orbit_invariant_check(m: ParamMatrix, digits: int = 30, elements: Iterable | None = None) -> OrbitReport:
    """Evaluate the invariant at every admissible orbit member; pass iff all balls share a point."""
    cache: dict = {}
    skipped = 0
    values = []
    for g in sorted(generate_group() if elements is None else elements):
        img = apply(m, g)
        key = img.entries
        if key in cache:
            if cache[key] is not None:
                values.append(cache[key])
            else:
                skipped += 1
            continue
        side = invariant_side(img)
        if side is None:
            cache[key] = None
            skipped += 1
            continue
        v = eval_prefactored(side[0], side[1], digits)
        cache[key] = v
        values.append(v)
    tol = Fraction(1, 10 ** (digits - 5))
    ok = bool(values) and max(v.lower() for v in values) <= min(v.upper() for v in values) \
        and all(v.rad_le(tol / 2) for v in values)
    distinct = sum(1 for v in cache.values() if v is not None)
    return OrbitReport(m, digits, len(values), skipped, distinct, values, ok)


def hypergeometric_value(m: ParamMatrix, digits: int = 40) -> BallReal:
    """H(m): the Gamma-weighted 3F2(1) itself."""
    params = m.parameters()
    if params is None:
        raise ValueError("inconsistent parameter matrix")
    a1, a2, a3, b2, b3 = params
    pref = gamma_ratio((a2, b2 - a2, a3, b3 - a3), (b2, b3))
    return eval_prefactored(pref, PfqSpec((a1, a2, a3), (b2, b3), 1), digits)


def lattice_fit(m: ParamMatrix, digits: int = 60, maxcoeff: int = 10 ** 12):
    """Heuristic integer relation H(m) = p + q log 2 found by PSLQ (evidence, not proof)."""
    h = hypergeometric_value(m, digits)
    l2 = const_eval("log2", digits)
    with mpmath.workdps(digits):
        rel = mpmath.pslq([h.mid, mpmath.mpf(1), l2.mid], maxcoeff=maxcoeff, maxsteps=10 ** 5)
    if rel is None or rel[0] == 0:
        return None
    d, p, q = rel
    return Fraction(-p, d), Fraction(-q, d)
