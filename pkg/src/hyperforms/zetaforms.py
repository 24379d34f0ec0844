"""Linear forms in zeta values at half-integer shifts, their denominators and growth.

For even s >= 8 and n >= 0 two rational functions are built,

    R(t)  = n!^(s-6) 2^(12n+1) (t + n/2) prod_{j=1}^{3n} (t-n-1/2+j)^2 / prod_{j=0}^{n} (t+j)^s
    R^(t) = n!^(s-6) 2^(12n)             prod_{j=1}^{3n} (t-n-1/2+j)^2 / prod_{j=0}^{n} (t+j)^s

and summed over t = nu - 1/2, nu >= 1, with and without a derivative.
R is odd and R^ is even about t = -n/2, which kills half of the zeta values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import ball
from .ball import BallReal
from .exact import bernoulli, lcm_upto
from .hyper import sum_rational_series
from .linforms import ConstantLinearForm, zeta_even_over_pi
from .ratfunc import FactoredRationalFunction, derivative, partial_fractions, sum_linear_form

__all__ = [
    "AsymptoticsResult",
    "IntegralityReport",
    "TheoremCoefficient",
    "ZetaFormSpec",
    "asymptotics",
    "build_R",
    "direct_value",
    "coefficients",
    "integrality_check",
    "kappa_from_forms",
    "root_enclosure",
    "theorem_coefficients",
    "vanishing_points",
    "zeta_form",
]

H = Fraction(1, 2)
OFFSET = -H
START = 1


class ParityError(AssertionError):
    """A zeta value of the wrong parity, or an unexpected constant, survived."""


@dataclass(frozen=True)
class ZetaFormSpec:
    s: int
    n: int
    variant: str = "R"        # "R" or "WT"
    derivative: bool = False

    def __post_init__(self):
        v = str(self.variant).upper()
        if v in ("HAT", "W", "WH"):
            v = "WT"
        object.__setattr__(self, "variant", v)
        if v not in ("R", "WT"):
            raise ValueError(f"variant must be R or WT, not {self.variant!r}")
        if self.s < 8 or self.s % 2:
            raise ValueError(f"s must be an even integer >= 8, got {self.s}")
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.degree_drop() < 2:
            raise ValueError("series does not converge")

    def degree_drop(self) -> int:
        return self.s * (self.n + 1) - 6 * self.n - (1 if self.variant == "R" else 0)

    def to_json(self) -> dict:
        return {"s": self.s, "n": self.n, "variant": self.variant, "derivative": self.derivative}


def vanishing_points(n: int) -> list:
    """Double zeros shared by both functions: t = nu - 2n + 1/2, nu = 0..3n-1."""
    return [nu - 2 * n + H for nu in range(3 * n)]


def build_R(spec: ZetaFormSpec) -> FactoredRationalFunction:
    s, n = spec.s, spec.n
    num = {}
    for j in range(1, 3 * n + 1):
        r = n + H - j
        num[r] = num.get(r, 0) + 2
    scalar = Fraction(math.factorial(n)) ** (s - 6) * 2 ** (12 * n)
    if spec.variant == "R":
        r = Fraction(-n, 2)
        num[r] = num.get(r, 0) + 1
        scalar *= 2
    den = {Fraction(-j): s for j in range(n + 1)}
    R = FactoredRationalFunction(scalar, num, den)
    for t in vanishing_points(n):
        if R(t) != 0 or R.derivative_at(t) != 0:
            raise AssertionError(f"R or R' does not vanish at {t}")
    return R


def _allowed(spec: ZetaFormSpec) -> tuple:
    """(parity of surviving zeta arguments, constant allowed)."""
    if spec.variant == "R":
        return (0, False) if spec.derivative else (1, True)
    return (1, True) if spec.derivative else (0, False)


@lru_cache(maxsize=None)
def _expansion(spec_key: tuple):
    s, n, variant = spec_key
    return partial_fractions(build_R(ZetaFormSpec(s, n, variant)))


@lru_cache(maxsize=None)
def _form_cached(s: int, n: int, variant: str, deriv: bool) -> ConstantLinearForm:
    spec = ZetaFormSpec(s, n, variant, deriv)
    pf = _expansion((s, n, spec.variant))
    if deriv:
        pf = -derivative(pf)
    form = sum_linear_form(pf, OFFSET, START)
    parity, const_ok = _allowed(spec)
    for lab in form.labels():
        if lab == "one":
            if not const_ok:
                raise ParityError(f"{spec}: unexpected constant term {form['one']}")
        elif lab.startswith("zeta("):
            i = int(lab[5:-1])
            if i % 2 != parity:
                raise ParityError(f"{spec}: nonzero coefficient on {lab}")
        else:
            raise ParityError(f"{spec}: unexpected constant {lab}")
    return form


def zeta_form(spec: ZetaFormSpec) -> ConstantLinearForm:
    """Exact sum_{nu>=1} R(nu-1/2) (or minus the derivative sum) as a form in 1, zeta(i)."""
    return _form_cached(spec.s, spec.n, spec.variant, bool(spec.derivative))


def direct_value(spec: ZetaFormSpec, digits: int = 40, start: int = START) -> BallReal:
    """Certified direct summation of the defining series (no partial fractions)."""
    R = build_R(spec)
    if spec.derivative:
        pf = -derivative(partial_fractions(R))
        return sum_rational_series(pf, start, OFFSET, False, digits)
    return sum_rational_series(R, start, OFFSET, False, digits)


def coefficients(s: int, n: int, variant: str = "R") -> dict:
    """a_i (column sums of the partial-fraction expansion) and a_0 / a^_0."""
    spec = ZetaFormSpec(s, n, variant)
    pf = _expansion((s, n, spec.variant))
    a = {}
    for (c, i), v in pf.terms.items():
        a[i] = a.get(i, Fraction(0)) + v
    const = zeta_form(ZetaFormSpec(s, n, spec.variant, spec.variant == "WT"))["one"]
    return {"a": {i: a.get(i, Fraction(0)) for i in range(1, s + 1)}, "a0": const}


@dataclass(frozen=True)
class IntegralityReport:
    s: int
    n: int
    d_n: int
    items: list       # (name, exponent, integral)
    passed: bool

    def to_json(self) -> dict:
        return {"s": self.s, "n": self.n, "d_n": self.d_n, "pass": self.passed,
                "items": [{"coefficient": k, "scaling": f"d_n^{e}", "integral": ok} for k, e, ok in self.items]}


def integrality_check(s: int, n: int) -> IntegralityReport:
    """d_n^(s-i) a_i, d_n^(s-i) a^_i (i = 2..s), d_n^s a_0 and d_n^(s+1) a^_0 integral."""
    d = lcm_upto(n)
    items = []
    for variant, tag in (("R", "a"), ("WT", "ahat")):
        co = coefficients(s, n, variant)
        for i in range(2, s + 1):
            items.append((f"{tag}_{i}", s - i, (co["a"][i] * d ** (s - i)).denominator == 1))
        e = s if variant == "R" else s + 1
        items.append((f"{tag}_0", e, (co["a0"] * d ** e).denominator == 1))
    return IntegralityReport(s, n, d, items, all(ok for _, _, ok in items))


# -- asymptotics -----------------------------------------------------------------

def _P(s: int, x: Fraction) -> Fraction:
    return x * x * (x + 2) ** s - (x + 3) ** 2 * (x + 1) ** s


def _dP(s: int, x: Fraction) -> Fraction:
    return (2 * x * (x + 2) ** s + s * x * x * (x + 2) ** (s - 1)
            - 2 * (x + 3) * (x + 1) ** s - s * (x + 3) ** 2 * (x + 1) ** (s - 1))


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _bisect(s: int, lo: Fraction, hi: Fraction, width: Fraction) -> tuple:
    slo = _sign(_P(s, lo))
    if slo == 0 or slo == _sign(_P(s, hi)):
        raise ArithmeticError(f"no sign change of P_{s} on [{lo}, {hi}]")
    while hi - lo > width:
        mid = (lo + hi) / 2
        sm = _sign(_P(s, mid))
        if sm == 0:
            return mid, mid
        if sm == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _dyadic(x: Fraction, bits: int) -> Fraction:
    return Fraction(round(x * 2 ** bits), 2 ** bits)


def _refine(s: int, lo: Fraction, hi: Fraction, digits: int) -> tuple:
    """Newton from a bisection bracket, then a certifying sign change around the iterate."""
    target = Fraction(1, 10 ** (digits + 4))
    bits = math.ceil((digits + 8) * math.log2(10))
    x = (lo + hi) / 2
    for _ in range(200):
        step = _P(s, x) / _dP(s, x)
        x = _dyadic(x - step, bits)
        if abs(step) < target / 4:
            break
    a, b = x - target, x + target
    if not (lo <= a and b <= hi) or _sign(_P(s, a)) * _sign(_P(s, b)) >= 0:
        # Newton drifted; fall back on plain bisection
        return _bisect(s, lo, hi, 2 * target)
    return a, b


def root_enclosure(s: int, interval: str, digits: int = 40) -> tuple:
    """Rational bracket [lo, hi] around the zero of P_s on x > 0 or on (-1, 0)."""
    if interval == "positive":
        lo, hi = Fraction(0), Fraction(1)
        while _sign(_P(s, hi)) <= 0:
            hi *= 2
    elif interval == "negative":
        lo, hi = Fraction(-1), Fraction(0)
    else:
        raise ValueError("interval is 'positive' or 'negative'")
    lo, hi = _bisect(s, lo, hi, (hi - lo) / 2 ** 40)
    return _refine(s, lo, hi, digits)


def _ln_g(s: int, x: BallReal) -> BallReal:
    two = ball.const_eval("log2", x.digits)
    return two * 12 + ball.ln(x + 3) * 6 + ball.ln(x + 1) * s - ball.ln(x + 2) * (2 * s)


@dataclass(frozen=True)
class AsymptoticsResult:
    s: int
    digits: int
    x0: BallReal
    x0p: BallReal
    ln_g_x0: BallReal
    ln_g_x0p: BallReal
    separated: bool

    def to_json(self) -> dict:
        return {"s": self.s, "digits": self.digits, "x0": self.x0.to_json(), "x0p": self.x0p.to_json(),
                "ln_g_x0": self.ln_g_x0.to_json(), "ln_g_x0p": self.ln_g_x0p.to_json(),
                "ln_g_x0p_lt_ln_g_x0": self.separated}


def asymptotics(s: int, digits: int = 40) -> AsymptoticsResult:
    if s < 8 or s % 2:
        raise ValueError(f"s must be an even integer >= 8, got {s}")
    work = digits + 10
    vals = []
    for which in ("positive", "negative"):
        lo, hi = root_enclosure(s, which, work)
        x = BallReal.from_fraction((lo + hi) / 2, (hi - lo) / 2, work)
        vals.append((x, _ln_g(s, x)))
    (x0, g0), (x1, g1) = vals
    sep = g1.upper() < g0.lower()
    return AsymptoticsResult(s, digits, x0.with_digits(digits), x1.with_digits(digits),
                             g0.with_digits(digits), g1.with_digits(digits), sep)


def P_ball(s: int, x: BallReal) -> BallReal:
    return x * x * ball.pow_int(x + 2, s) - ball.pow_int(x + 3, 2) * ball.pow_int(x + 1, s)


# -- theorem coefficients --------------------------------------------------------

@dataclass(frozen=True)
class TheoremCoefficient:
    m: int
    collection: int
    kappa: Fraction
    listed: bool      # m within the range tabulated for the collection

    def to_json(self) -> dict:
        return {"m": self.m, "collection": self.collection,
                "kappa": f"{self.kappa.numerator}/{self.kappa.denominator}", "listed": self.listed}


_RANGE = {1: 19, 2: 21}


def theorem_coefficients(m: int, collection: int) -> TheoremCoefficient:
    """Rational coefficient of lambda pi^(2m+1) in the two collections."""
    if collection not in (1, 2):
        raise ValueError("collection is 1 or 2")
    if not 1 <= m <= 21:
        raise ValueError("m must lie in 1..21")
    if collection == 1:
        k = Fraction(2 ** (2 * m) * (2 ** (2 * m + 2) - 1)) * abs(bernoulli(2 * m + 2)) \
            / ((2 ** (2 * m + 1) - 1) * (m + 1) * math.factorial(2 * m))
    else:
        k = Fraction(2 ** (2 * m) * (2 ** (2 * m) - 1)) * abs(bernoulli(2 * m)) \
            / ((2 ** (2 * m + 1) - 1) * m * math.factorial(2 * m))
    return TheoremCoefficient(m, collection, k, m <= _RANGE[collection])


def kappa_from_forms(m: int) -> Fraction:
    """Collection-1 coefficient rebuilt from the form shapes: with i = 2m+1 the
    combination r - (lambda/pi) r' carries zeta(i) - lambda c pi^i where
    c pi^(i+1) = i (2^(i+1)-1) / (2^i-1) * zeta(i+1)."""
    i = 2 * m + 1
    return Fraction(i * (2 ** (i + 1) - 1), 2 ** i - 1) * zeta_even_over_pi(i + 1)
