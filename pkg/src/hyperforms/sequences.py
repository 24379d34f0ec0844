"""Rational approximation families for Catalan's constant, log 2 and pi^2.

Each family gives, for an index n, three independent descriptions of the
same number:

* a factored rational summand with a summation grid, from which the exact
  linear form is extracted by partial fractions;
* a Gamma-prefactored hypergeometric series for numeric evaluation;
* direct certified summation of the rational summand.

The module also fits linear recurrences to the extracted forms and certifies
denominators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .ball import BallReal, evaluate_form
from .exact import as_fraction, lcm_upto
from .hyper import sum_rational_series
from .identities import Side, compare_balls
from .linforms import ConstantLinearForm
from .ratfunc import (FactoredRationalFunction, analyze_symmetry, lemma_linear_form, partial_fractions,
                      sum_linear_form)

__all__ = [
    "FAMILIES",
    "CrossCheckReport",
    "IntegralityCertificate",
    "Recurrence",
    "VanishingError",
    "build_form",
    "certify_integrality",
    "cross_check",
    "direct_sum",
    "fit_recurrence",
    "get_family",
    "series_value",
]

F = Fraction
H = Fraction(1, 2)
MAX_N = 30


class VanishingError(AssertionError):
    """An extracted form has a nonzero coefficient outside the family's basis."""


@dataclass(frozen=True)
class Grid:
    start: int = 0
    offset: Fraction = F(0)
    alternating: bool = False


@dataclass(frozen=True)
class Family:
    name: str
    constant: str
    basis: tuple
    summand: Callable      # n -> (FactoredRationalFunction, Grid)
    series: Callable       # n -> Side
    pi_basis: bool = False
    description: str = ""


def _roots(*groups) -> dict:
    out: dict = {}
    for g in groups:
        for r in g:
            r = as_fraction(r)
            out[r] = out.get(r, 0) + 1
    return out


# -- Catalan ---------------------------------------------------------------------

def _catalan_r(n):
    # (2t+n+1) n! prod_{j=1}^n (t+1-j)(t+n+j) / prod_{j=0}^n (t+j+1/2)^3, times (-1)^(n+t)
    num = _roots([-F(n + 1, 2)], [j - 1 for j in range(1, n + 1)], [-n - j for j in range(1, n + 1)])
    den = {-j - H: 3 for j in range(n + 1)}
    R = FactoredRationalFunction(2 * math.factorial(n) * (-1) ** n, num, den)
    return R, Grid(0, F(0), True)


def _catalan_r_series(n):
    return Side((F(1, 2), 3 * n + 2, n + H, n + H, n + 1), (2 * n + F(3, 2),) * 3,
                (3 * n + 1, F(3 * n, 2) + F(3, 2), n + H, n + H, n + H, n + 1),
                (F(3 * n, 2) + H, 2 * n + F(3, 2), 2 * n + F(3, 2), 2 * n + F(3, 2), 2 * n + 1), -1,
                F(1, 4 ** n))


def _catalan_wt(n):
    # 2^(2n+2) (2t-1) (2n+1)! prod_{j=0}^{2n-1} (t-n+j) / prod_{j=0}^{2n+1} (2t-n-3/2+j)^2
    num = _roots([H], [n - j for j in range(2 * n)])
    den = {F(2 * n + 3 - 2 * j, 4): 2 for j in range(2 * n + 2)}
    scalar = F(2 ** (2 * n + 2) * 2 * math.factorial(2 * n + 1), 4 ** (2 * n + 2))
    return FactoredRationalFunction(scalar, num, den), Grid(1, F(0), False)


def _catalan_wt_series(n):
    q = F(n, 2)
    return Side((2 * n + 2, 2 * n + 2, n + H, n + H), (3 * n + F(5, 2),) * 2,
                (2 * n + 1, n + F(3, 2), q + F(1, 4), q + F(1, 4), q + F(3, 4), q + F(3, 4)),
                (n + H, F(3 * n, 2) + F(7, 4), F(3 * n, 2) + F(7, 4), F(3 * n, 2) + F(5, 4), F(3 * n, 2) + F(5, 4)),
                1, F(2 ** (2 * n + 2)))


# -- log 2 -----------------------------------------------------------------------

def _log2_r(n):
    # (-1)^(n+1) prod_{j=1}^n (t-j) / prod_{j=0}^n (t+j), times (-1)^t.
    # Terms with t <= n vanish through the numerator, so the grid starts at n+1.
    R = FactoredRationalFunction((-1) ** (n + 1), _roots(range(1, n + 1)), _roots(-j for j in range(n + 1)))
    return R, Grid(n + 1, F(0), True)


def _log2_r_series(n):
    return Side((n + 1, n + 1), (2 * n + 2,), (n + 1, n + 1), (2 * n + 2,), -1)


def _log2_wt(n):
    # (2n+1)! prod_{j=1}^n (t-j) / (n! prod_{j=0}^{2n+1} (2t-n-1+j)).
    # For t in 1..n a numerator zero meets a denominator zero; those terms are zero in
    # the original product, whereas the reduced function is finite there.  Start at n+1.
    scalar = F(math.factorial(2 * n + 1), math.factorial(n) * 2 ** (2 * n + 2))
    R = FactoredRationalFunction(scalar, _roots(range(1, n + 1)), _roots(F(n + 1 - j, 2) for j in range(2 * n + 2)))
    return R, Grid(n + 1, F(0), False)


def _log2_wt_series(n):
    return Side((n + 1, 2 * n + 2), (3 * n + 3,), (n + 1, F(n, 2) + H, F(n, 2) + 1),
                (F(3 * n, 2) + 2, F(3 * n, 2) + F(3, 2)), 1)


# -- pi^2 ------------------------------------------------------------------------

def _pi2_r(n):
    # 2^(8n) n!^4 (2n)!^2 prod_{j=0}^{4n-1} (t-n+j) / ((4n)! prod_{j=0}^{2n} (t-1/2+j)^4)
    scalar = F(2 ** (8 * n) * math.factorial(n) ** 4 * math.factorial(2 * n) ** 2, math.factorial(4 * n))
    R = FactoredRationalFunction(scalar, _roots(n - j for j in range(4 * n)), {H - j: 4 for j in range(2 * n + 1)})
    return R, Grid(1, F(0), False)


def _pi2_r_series(n):
    # pi^2 = Gamma(1/2)^4
    return Side((H, H, H, H) + (2 * n + 1,) * 6, (3 * n + F(3, 2),) * 4,
                (4 * n + 1,) + (n + H,) * 4, (3 * n + F(3, 2),) * 4, 1)


FAMILIES = {
    "CATALAN_R": Family("CATALAN_R", "G", ("one", "G"), _catalan_r, _catalan_r_series,
                        description="alternating very-well-poised 6F5(-1) approximations"),
    "CATALAN_WT": Family("CATALAN_WT", "G", ("one", "G"), _catalan_wt, _catalan_wt_series,
                         description="6F5(1) approximations from quarter-integer poles"),
    "LOG2_R": Family("LOG2_R", "log2", ("one", "log2"), _log2_r, _log2_r_series,
                     description="classical 2F1(-1) approximations"),
    "LOG2_WT": Family("LOG2_WT", "log2", ("one", "log2"), _log2_wt, _log2_wt_series,
                      description="3F2(1) approximations equal to the classical ones"),
    "PI2_R": Family("PI2_R", "pi2", ("one", "pi2", "pi4"), _pi2_r, _pi2_r_series, pi_basis=True,
                    description="well-poised 5F4(1) forms in 1, pi^2, pi^4"),
}


def get_family(name) -> Family:
    if isinstance(name, Family):
        return name
    key = str(name).upper().replace("-", "_")
    if key not in FAMILIES:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}")
    return FAMILIES[key]


# -- exact forms -----------------------------------------------------------------

@lru_cache(maxsize=None)
def _build_form_cached(name: str, n: int) -> ConstantLinearForm:
    fam = FAMILIES[name]
    R, grid = fam.summand(n)
    pf = partial_fractions(R)
    form = sum_linear_form(pf, grid.offset, grid.start, grid.alternating)
    if fam.pi_basis:
        form = form.to_pi_basis()
    extra = form.restricted_to(fam.basis)
    if extra:
        raise VanishingError(f"{name} n={n}: nonzero coefficient on {', '.join(extra)}")
    return form


def build_form(family, n: int, max_n: int = MAX_N) -> ConstantLinearForm:
    """Exact linear form of the n-th approximation, restricted to the family's basis."""
    fam = get_family(family)
    if n < 0 or n > max_n:
        raise ValueError(f"n = {n} outside 0..{max_n}")
    return _build_form_cached(fam.name, n)


def symmetric_form(n: int) -> ConstantLinearForm:
    """PI2_R via the well-poised symmetry: sum over t >= 1-n in closed form (then pi basis)."""
    R, _ = _pi2_r(n)
    pf = partial_fractions(R)
    rep = analyze_symmetry(pf, 2 * n)
    if not rep.verified:
        raise AssertionError(f"symmetry fails at n={n}: {rep.counterexample}")
    return lemma_linear_form(rep).to_pi_basis()


def series_value(family, n: int, digits: int = 40) -> BallReal:
    return get_family(family).series(n).evaluate(digits)


def direct_sum(family, n: int, digits: int = 40) -> BallReal:
    R, grid = get_family(family).summand(n)
    return sum_rational_series(R, grid.start, grid.offset, grid.alternating, digits)


@dataclass(frozen=True)
class CrossCheckReport:
    family_a: str
    family_b: str
    n: int
    digits: int
    value_a: BallReal
    value_b: BallReal
    passed: bool
    distance: Fraction

    def to_json(self) -> dict:
        return {"family_a": self.family_a, "family_b": self.family_b, "n": self.n, "digits": self.digits,
                "value_a": self.value_a.to_json(), "value_b": self.value_b.to_json(), "pass": self.passed,
                "distance": format(float(self.distance), ".3e")}


def cross_check(family_a, family_b, n: int, digits: int = 50, method: str = "series") -> CrossCheckReport:
    """Compare two families at index n, each evaluated from its own hypergeometric series
    (``method="series"``) or from its extracted exact form (``method="form"``)."""
    fa, fb = get_family(family_a), get_family(family_b)
    if method == "series":
        va, vb = series_value(fa, n, digits), series_value(fb, n, digits)
    elif method == "form":
        va, vb = evaluate_form(build_form(fa, n), digits), evaluate_form(build_form(fb, n), digits)
    else:
        raise ValueError("method must be 'series' or 'form'")
    ok, dist = compare_balls(va, vb, digits)
    return CrossCheckReport(fa.name, fb.name, n, digits, va, vb, ok, dist)


# -- recurrences -----------------------------------------------------------------

@dataclass(frozen=True)
class Recurrence:
    """sum_{i=0}^{order} p_i(n) r_{n+low+i} = 0 with low = 1 - order.

    ``coefficients[i]`` lists the coefficients of p_i in ascending powers of n.
    """

    order: int
    coefficients: tuple
    status: str = "fitted"
    verified_on: tuple = ()

    @property
    def low(self) -> int:
        return 1 - self.order

    @property
    def degree(self) -> int:
        return max(len(c) for c in self.coefficients) - 1

    def poly(self, i: int, n) -> Fraction:
        return sum((c * F(n) ** k for k, c in enumerate(self.coefficients[i])), F(0))

    def residual(self, forms: Callable, n: int) -> ConstantLinearForm:
        out = ConstantLinearForm()
        for i in range(self.order + 1):
            out = out + forms(n + self.low + i) * self.poly(i, n)
        return out

    def characteristic_polynomial(self) -> list:
        """Ascending coefficients of sum_i [n^D] p_i(n) lambda^i, made monic."""
        D = self.degree
        c = [co[D] if len(co) > D else F(0) for co in self.coefficients]
        while c and c[-1] == 0:
            c.pop()
        lead = c[-1]
        return [x / lead for x in c]

    def to_json(self) -> dict:
        return {"order": self.order, "low": self.low, "status": self.status,
                "coefficients": [[f"{x.numerator}/{x.denominator}" for x in p] for p in self.coefficients],
                "characteristic_polynomial": [f"{x.numerator}/{x.denominator}" for x in self.characteristic_polynomial()],
                "verified_on": list(self.verified_on)}

    def pretty(self) -> str:
        terms = []
        for i in range(self.order + 1):
            p = " + ".join(f"{c}*n^{k}" if k else f"{c}" for k, c in enumerate(self.coefficients[i]) if c)
            off = self.low + i
            idx = "n" if off == 0 else (f"n+{off}" if off > 0 else f"n{off}")
            terms.append(f"({p}) r[{idx}]")
        return " + ".join(terms) + " = 0"


def _normalise(vec: list, order: int, degree: int) -> tuple:
    den = 1
    for x in vec:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    polys = [ints[i * (degree + 1):(i + 1) * (degree + 1)] for i in range(order + 1)]
    top = polys[-1]
    lead = next((x for x in reversed(top) if x), None)
    if lead is None:
        lead = next(x for p in reversed(polys) for x in reversed(p) if x)
    if lead < 0:
        polys = [[-x for x in p] for p in polys]
    trimmed = []
    for p in polys:
        p = [F(x) for x in p]
        trimmed.append(tuple(p))
    # drop common trailing zero powers so that degree reflects the fit
    D = max((k for p in trimmed for k, x in enumerate(p) if x), default=0)
    return tuple(tuple(p[:D + 1]) for p in trimmed)


def fit_recurrence(family, order: int, degree: int, n_range: Iterable[int] | None = None,
                   fresh: int = 3) -> Recurrence | None:
    """Exact fit of a recurrence of given order and degree; None if no nontrivial one exists.

    ``family`` is a family name, a callable n -> ConstantLinearForm, or a list of forms
    indexed from 0.  The fit is re-verified on ``fresh`` indices past the range when
    more data is available.
    """
    if isinstance(family, (list, tuple)):
        data = list(family)
        forms = lambda n: data[n]
        limit = len(data) - 1
    elif callable(family) and not isinstance(family, Family):
        forms, limit = family, None
    else:
        fam = get_family(family)
        forms, limit = (lambda n: build_form(fam, n)), MAX_N
    low = 1 - order
    if n_range is None:
        n_range = range(-low, -low + (order + 1) * (degree + 1) + 4)
    ns = [n for n in n_range if n + low >= 0 and (limit is None or n + low + order <= limit)]
    if len(ns) < (order + 1) * (degree + 1) + 4:
        raise ValueError("not enough data points for an oversampled fit")
    labels = sorted({lab for n in ns for i in range(order + 1) for lab in forms(n + low + i).labels()})
    rows = []
    for n in ns:
        for lab in labels:
            row = []
            for i in range(order + 1):
                v = forms(n + low + i)[lab]
                row.extend(v * F(n) ** k for k in range(degree + 1))
            rows.append([QQ(x.numerator, x.denominator) for x in row])
    M = DomainMatrix(rows, (len(rows), (order + 1) * (degree + 1)), QQ)
    null = M.nullspace().to_Matrix()
    if null.rows == 0:
        return None
    vec = [F(int(x.p), int(x.q)) for x in null.row(0)]
    rec = Recurrence(order, _normalise(vec, order, degree))
    checked = list(ns)
    last = max(ns)
    for n in range(last + 1, last + 1 + fresh):
        if limit is not None and n + low + order > limit:
            break
        if not rec.residual(forms, n).is_zero():
            return None
        checked.append(n)
    for n in ns:
        if not rec.residual(forms, n).is_zero():
            return None
    return Recurrence(order, rec.coefficients, "fitted", tuple(checked))


# -- integrality -----------------------------------------------------------------

def _d(N: int) -> int:
    return 1 if N <= 0 else lcm_upto(N)


_SCALINGS = {
    "CATALAN_WT": (lambda n: (4 * n, _d(2 * n - 1) ** 2), "2^(4n) d_(2n-1)^2", False),
    "CATALAN_R": (lambda n: (4 * n, _d(2 * n - 1) ** 2), "2^(4n) d_(2n-1)^2", True),
    "LOG2_R": (lambda n: (0, _d(n)), "d_n", True),
    "LOG2_WT": (lambda n: (0, _d(n)), "d_n", True),
}


@dataclass(frozen=True)
class IntegralityCertificate:
    family: str
    n: int
    scaling: str
    factor: int
    scaled: dict
    passed: bool
    conjectural: bool
    minimal_power_of_two: int | None = None

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "scaling": self.scaling, "factor": str(self.factor),
                "scaled": {k: f"{v.numerator}/{v.denominator}" for k, v in self.scaled.items()},
                "pass": self.passed, "conjectural": self.conjectural,
                "minimal_power_of_two": self.minimal_power_of_two}


def certify_integrality(family, n: int) -> IntegralityCertificate:
    """Check that the registered scaling clears every denominator of the n-th form."""
    fam = get_family(family)
    if fam.name not in _SCALINGS:
        raise KeyError(f"no integrality scaling registered for {fam.name}")
    rule, text, conj = _SCALINGS[fam.name]
    e2, odd = rule(n)
    form = build_form(fam, n)
    factor = 2 ** e2 * odd
    scaled = {lab: form[lab] * factor for lab in fam.basis}
    ok = all(v.denominator == 1 for v in scaled.values())
    # smallest power of two that works together with the d-part
    min_e = None
    for e in range(0, e2 + 64):
        if all((form[lab] * 2 ** e * odd).denominator == 1 for lab in fam.basis):
            min_e = e
            break
    return IntegralityCertificate(fam.name, n, text, factor, scaled, ok, conj, min_e)
