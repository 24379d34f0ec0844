"""Factored rational functions, exact partial fractions and their summation.

A :class:`FactoredRationalFunction` is ``scalar * prod (t - r)^e / prod (t - p)^f``
with rational roots.  Its :class:`PartialFractionExpansion` stores the
coefficient of ``(t - c)^-i`` under the key ``(c, i)``.  Summing an expansion
over a shifted integer grid reduces every term to the Hurwitz-type blocks in
:mod:`hyperforms.linforms` plus finitely many rational corrections.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .exact import as_fraction
from .linforms import ConstantLinearForm, alternating_block, hurwitz_block

__all__ = [
    "DivergentSumError",
    "FactoredRationalFunction",
    "PartialFractionExpansion",
    "PoleOnGridError",
    "SymmetryReport",
    "analyze_symmetry",
    "derivative",
    "partial_fractions",
    "poly_eval",
    "poly_from_roots",
    "lemma_linear_form",
    "sum_linear_form",
]

Poly = list  # ascending Fraction coefficients


class DivergentSumError(ValueError):
    """Simple-pole coefficients do not cancel, so the plain sum diverges."""


class PoleOnGridError(ValueError):
    """A summation point coincides with a pole."""


# -- small polynomial helpers (ascending coefficient lists) ----------------

def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return poly_trim(out)


def poly_scale(a: Poly, s) -> Poly:
    return [x * s for x in a]


def poly_trim(a: Poly) -> Poly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_eval(a: Poly, t) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * t + c
    return acc


def poly_deriv(a: Poly) -> Poly:
    return [i * a[i] for i in range(1, len(a))]


def poly_shift(a: Poly, h) -> Poly:
    """Coefficients of a(t + h)."""
    h = as_fraction(h)
    out = [Fraction(0)] * len(a)
    # Horner in polynomial arithmetic
    for c in reversed(a):
        # out = out * (t + h) + c
        new = [Fraction(0)] * len(a)
        for i, x in enumerate(out):
            if x:
                new[i] += x * h
                if i + 1 < len(new):
                    new[i + 1] += x
        new[0] += c
        out = new
    return poly_trim(out)


def poly_from_roots(roots: Mapping[Fraction, int], scalar=1) -> Poly:
    p: Poly = [as_fraction(scalar)]
    for r, e in roots.items():
        for _ in range(e):
            p = poly_mul(p, [-r, Fraction(1)])
    return p


# -- factored rational functions -------------------------------------------

def _collect(factors) -> dict[Fraction, int]:
    out: dict[Fraction, int] = {}
    if isinstance(factors, Mapping):
        factors = factors.items()
    for r, e in factors:
        r = as_fraction(r)
        if e < 0:
            raise ValueError("multiplicities must be positive")
        if e:
            out[r] = out.get(r, 0) + int(e)
    return out


@dataclass(frozen=True)
class FactoredRationalFunction:
    """``scalar * prod (t - r)^e / prod (t - p)^f`` with common roots cancelled."""

    scalar: Fraction
    numerator: dict = field(default_factory=dict)
    denominator: dict = field(default_factory=dict)

    def __post_init__(self):
        num = _collect(self.numerator)
        den = _collect(self.denominator)
        for r in list(num):
            if r in den:
                k = min(num[r], den[r])
                num[r] -= k
                den[r] -= k
        num = {r: e for r, e in sorted(num.items(), reverse=True) if e}
        den = {r: e for r, e in sorted(den.items(), reverse=True) if e}
        object.__setattr__(self, "scalar", as_fraction(self.scalar))
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @property
    def num_degree(self) -> int:
        return sum(self.numerator.values())

    @property
    def den_degree(self) -> int:
        return sum(self.denominator.values())

    @property
    def degree_drop(self) -> int:
        return self.den_degree - self.num_degree

    def is_proper(self) -> bool:
        return self.scalar == 0 or self.degree_drop > 0

    def poles(self) -> dict:
        return dict(self.denominator)

    def __call__(self, t) -> Fraction:
        return self.evaluate(t)

    def evaluate(self, t) -> Fraction:
        t = as_fraction(t)
        if t in self.denominator:
            raise PoleOnGridError(f"pole at t = {t}")
        v = self.scalar
        for r, e in self.numerator.items():
            v *= (t - r) ** e
        for p, f in self.denominator.items():
            v /= (t - p) ** f
        return v

    def polynomials(self) -> tuple[Poly, Poly]:
        """(numerator, denominator) as expanded coefficient lists."""
        return (poly_from_roots(self.numerator, self.scalar),
                poly_from_roots(self.denominator))

    def derivative_at(self, t) -> Fraction:
        t = as_fraction(t)
        N, D = self.polynomials()
        d = poly_eval(D, t)
        if d == 0:
            raise PoleOnGridError(f"pole at t = {t}")
        return (poly_eval(poly_deriv(N), t) * d - poly_eval(N, t) * poly_eval(poly_deriv(D), t)) / d ** 2

    def shifted(self, h) -> "FactoredRationalFunction":
        """The function t -> R(t + h)."""
        h = as_fraction(h)
        return FactoredRationalFunction(
            self.scalar,
            {r - h: e for r, e in self.numerator.items()},
            {p - h: f for p, f in self.denominator.items()},
        )

    def __mul__(self, s):
        return FactoredRationalFunction(self.scalar * as_fraction(s), self.numerator, self.denominator)

    __rmul__ = __mul__


# -- partial fractions -----------------------------------------------------

@dataclass(frozen=True)
class PartialFractionExpansion:
    """``sum a[(c, i)] / (t - c)^i`` plus an optional polynomial part."""

    terms: dict
    polynomial_part: tuple = ()

    def __post_init__(self):
        clean = {}
        for (c, i), a in self.terms.items():
            a = as_fraction(a)
            if a != 0:
                key = (as_fraction(c), int(i))
                clean[key] = clean.get(key, Fraction(0)) + a
        clean = {k: clean[k] for k in sorted(clean, key=lambda k: (-k[0], k[1])) if clean[k] != 0}
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "polynomial_part", tuple(as_fraction(x) for x in self.polynomial_part))

    def poles(self) -> dict:
        out: dict = {}
        for (c, i) in self.terms:
            out[c] = max(out.get(c, 0), i)
        return out

    def max_order(self) -> int:
        return max((i for (_, i) in self.terms), default=0)

    def evaluate(self, t) -> Fraction:
        t = as_fraction(t)
        v = poly_eval(list(self.polynomial_part), t)
        for (c, i), a in self.terms.items():
            if t == c:
                raise PoleOnGridError(f"pole at t = {t}")
            v += a / (t - c) ** i
        return v

    __call__ = evaluate

    def __add__(self, other: "PartialFractionExpansion") -> "PartialFractionExpansion":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + v
        poly = poly_add(list(self.polynomial_part), list(other.polynomial_part))
        return PartialFractionExpansion(terms, tuple(poly))

    def __mul__(self, s):
        s = as_fraction(s)
        return PartialFractionExpansion({k: v * s for k, v in self.terms.items()},
                                         tuple(x * s for x in self.polynomial_part))

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def shifted(self, h) -> "PartialFractionExpansion":
        """Expansion of t -> R(t + h)."""
        h = as_fraction(h)
        return PartialFractionExpansion({(c - h, i): a for (c, i), a in self.terms.items()},
                                        tuple(poly_shift(list(self.polynomial_part), h)))

    def polynomials(self) -> tuple[Poly, Poly]:
        """Single-fraction form (N, D) with D = prod (t - c)^order."""
        poles = self.poles()
        D = poly_from_roots(poles)
        N: Poly = poly_mul(list(self.polynomial_part), D)
        for (c, i), a in self.terms.items():
            others = {p: e for p, e in poles.items() if p != c}
            others_c = {c: poles[c] - i} if poles[c] > i else {}
            N = poly_add(N, poly_from_roots({**others, **others_c}, a))
        return poly_trim(N), D

    def to_json(self) -> dict:
        return {"terms": [{"pole": f"{c.numerator}/{c.denominator}", "order": i,
                           "coeff": f"{a.numerator}/{a.denominator}"}
                          for (c, i), a in self.terms.items()]}


def _binom_series(d: Fraction, e: int, order: int) -> list[Fraction]:
    """Taylor coefficients of (d + u)^e in u up to u^(order-1); e may be negative."""
    out = []
    coef = Fraction(1)  # generalized binomial C(e, j)
    for j in range(order):
        if j > 0:
            coef = coef * (e - j + 1) / j
        if e >= 0 and j > e:
            out.append(Fraction(0))
        else:
            out.append(coef * d ** (e - j))
    return out


def _series_mul(a: list, b: list, order: int) -> list:
    out = [Fraction(0)] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j in range(order - i):
                out[i + j] += x * b[j]
    return out


def partial_fractions(R: FactoredRationalFunction) -> PartialFractionExpansion:
    """Exact expansion by Taylor coefficients of ``(t - c)^m R(t)`` at each pole."""
    if not R.is_proper():
        raise ValueError("partial_fractions needs a proper rational function")
    terms: dict = {}
    if R.scalar == 0:
        return PartialFractionExpansion({})
    for c, m in R.denominator.items():
        series = [Fraction(0)] * m
        series[0] = R.scalar
        for r, e in R.numerator.items():
            series = _series_mul(series, _binom_series(c - r, e, m), m)
        for p, f in R.denominator.items():
            if p != c:
                series = _series_mul(series, _binom_series(c - p, -f, m), m)
        for j, g in enumerate(series):
            if g:
                terms[(c, m - j)] = g
    return PartialFractionExpansion(terms)


def derivative(pf: PartialFractionExpansion) -> PartialFractionExpansion:
    """Termwise d/dt: (c, i) -> (c, i + 1) with factor -i."""
    return PartialFractionExpansion({(c, i + 1): -i * a for (c, i), a in pf.terms.items()},
                                    tuple(poly_deriv(list(pf.polynomial_part))))


# -- symmetry --------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryReport:
    center: Fraction
    sign: int
    verified: bool
    a: dict
    a0: Fraction
    a0_closed_form: Fraction | None = None
    counterexample: tuple | None = None
    shift: Fraction = Fraction(0)

    def to_json(self) -> dict:
        return {
            "center": str(self.center), "sign": self.sign, "verified": self.verified,
            "a": {str(i): str(v) for i, v in self.a.items()}, "a0": str(self.a0),
            "a0_closed_form": None if self.a0_closed_form is None else str(self.a0_closed_form),
            "counterexample": None if self.counterexample is None else list(map(str, self.counterexample)),
        }


def _half_sum(i: int, lo: int, hi: int) -> Fraction:
    return sum((Fraction(1) / (Fraction(2 * l - 1, 2)) ** i for l in range(lo, hi + 1)), Fraction(0))


def analyze_symmetry(pf: PartialFractionExpansion, n: int) -> SymmetryReport:
    """Check a_{i,n-k} = +/-(-1)^i a_{i,k} and compute the column sums a_i and a_0.

    Poles must lie in {s, s-1, ..., s-n} for a single rational shift s (the
    largest pole); coordinates are normalised so the poles become 0..-n.  The
    constant a_0 is computed from the finite correction sums of
    sum_{t>=-m} R(t - 1/2); for symmetric R it is compared against the closed
    form 0 (n even) or R(-m-1/2)/2 (n odd).
    """
    if pf.polynomial_part:
        raise ValueError("expansion must be proper")
    poles = pf.poles()
    if not poles:
        return SymmetryReport(Fraction(-n, 2), 1, True, {}, Fraction(0), Fraction(0))
    shift = max(poles)
    ks = {}
    for c in poles:
        k = shift - c
        if k.denominator != 1 or not 0 <= k <= n:
            raise ValueError(f"pole {c} not on the grid {shift} - (0..{n})")
    norm = pf.shifted(shift)  # poles now at -k
    a_ik: dict = {}
    for (c, i), a in norm.terms.items():
        a_ik[(i, int(-c))] = a
    orders = sorted({i for (i, _) in a_ik})
    counter = None
    sign = 0
    for candidate in (1, -1):
        bad = None
        for i in orders:
            for k in range(n + 1):
                lhs = a_ik.get((i, n - k), Fraction(0))
                rhs = candidate * (-1) ** i * a_ik.get((i, k), Fraction(0))
                if lhs != rhs:
                    bad = (i, k)
                    break
            if bad:
                break
        if bad is None:
            sign = candidate
            break
        if candidate == 1:
            counter = bad
    col = {i: sum((a_ik.get((i, k), Fraction(0)) for k in range(n + 1)), Fraction(0)) for i in orders}
    m = (n - 1) // 2
    a0 = Fraction(0)
    for (i, k), a in a_ik.items():
        if k <= m:
            a0 += a * _half_sum(i, k - m, 0)
        else:
            a0 -= a * _half_sum(i, 1, k - m - 1)
    closed = None
    verified = sign != 0
    if sign == 1:
        closed = Fraction(0) if n % 2 == 0 else norm.evaluate(Fraction(-2 * m - 1, 2)) / 2
        verified = closed == a0
    return SymmetryReport(center=shift - Fraction(n, 2), sign=sign, verified=verified, a=col, a0=a0,
                          a0_closed_form=closed, counterexample=None if sign else counter, shift=shift)


# -- summation -------------------------------------------------------------

def _split(x: Fraction) -> tuple[int, Fraction]:
    """x = q + f with q integer and f in (0, 1]."""
    q = math.ceil(x) - 1
    return q, x - q


def _finite(i: int, f: Fraction, lo: int, hi: int, alternating: bool) -> Fraction:
    s = Fraction(0)
    for j in range(lo, hi + 1):
        term = 1 / (j + f) ** i
        s += -term if (alternating and j % 2) else term
    return s


def sum_linear_form(pf: PartialFractionExpansion, offset=Fraction(0), start: int = 0,
                    alternating: bool = False) -> ConstantLinearForm:
    """Exact value of ``sum_{nu >= start} (+-1)^nu R(nu + offset)`` as a linear form.

    Supported residues of ``start + offset - pole`` mod 1 are 1, 1/2, 1/4, 3/4
    (quarter residues only without alternation).  Without alternation the
    simple-pole coefficients must sum to zero.
    """
    offset = as_fraction(offset)
    if pf.polynomial_part:
        raise ValueError("polynomial part present: series diverges")
    if not alternating:
        s1 = sum((a for (c, i), a in pf.terms.items() if i == 1), Fraction(0))
        if s1 != 0:
            raise DivergentSumError(f"simple-pole coefficients sum to {s1}, not 0")
    total = ConstantLinearForm()
    const = Fraction(0)
    for (c, i), a in pf.terms.items():
        x = start + offset - c
        if x.denominator not in (1, 2, 4):
            raise ValueError(f"residue {x} has denominator outside 1, 2, 4")
        if x.denominator == 1 and x <= 0:
            raise PoleOnGridError(f"summation point hits pole {c}")
        q, f = _split(x)
        if alternating:
            base = alternating_block(i, f)
            corr = -_finite(i, f, 0, q - 1, True) if q >= 0 else _finite(i, f, q, -1, True)
            sgn = (-1) ** (q + start)
            total = total + base * (a * sgn)
            const += a * sgn * corr
        else:
            base = hurwitz_block(i, f)
            corr = -_finite(i, f, 0, q - 1, False) if q >= 0 else _finite(i, f, q, -1, False)
            total = total + base * a
            const += a * corr
    return total + ConstantLinearForm({"one": const})


def lemma_linear_form(report: SymmetryReport) -> ConstantLinearForm:
    """sum_{t >= -m} R(t - 1/2) for a symmetric R, as sum_{i even} a_i (2^i - 1) zeta(i) + a_0.

    The sum runs in the normalised coordinates of the report (poles at 0..-n).
    """
    if not report.verified or report.sign != 1:
        raise ValueError("the closed form needs a verified symmetric expansion")
    out = {"one": report.a0}
    for i, a in report.a.items():
        if i % 2 == 0:
            out[f"zeta({i})"] = a * (2 ** i - 1)
        elif a != 0:
            raise AssertionError(f"odd column sum a_{i} = {a} does not vanish")
    return ConstantLinearForm(out)
