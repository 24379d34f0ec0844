"""Midpoint-radius ("ball") real arithmetic with explicit per-call precision.

Midpoints are mpmath raw floats; every operation rounds the midpoint to
nearest and folds a bound on that rounding into the radius, which is itself
accumulated with upward rounding.  No global precision state is touched.

The constants (pi, log 2, Catalan, Euler's gamma, zeta(i)) are computed from
exact rational partial sums with explicit tail bounds and only then converted
to balls.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath
from mpmath import libmp

from .exact import as_fraction, bernoulli

__all__ = [
    "BallReal",
    "DomainError",
    "const_eval",
    "elementary",
    "evaluate_form",
    "exp",
    "ln",
    "sqrt",
    "pi_power",
    "working_bits",
]

_RAD_PREC = 64
_ZERO = libmp.fzero
Number = Union[int, Fraction, "BallReal"]


class DomainError(ValueError):
    """Function argument ball leaves (or straddles) the domain."""


def working_bits(digits: int) -> int:
    return int(math.ceil(digits * 3.3219280948873626)) + 24


def _ulp(mid, prec):
    # bound on |exact - round_nearest(exact)| at precision prec
    if mid == _ZERO:
        return _ZERO
    return libmp.mpf_shift(libmp.mpf_abs(mid), 1 - prec)


def _up_add(*xs):
    out = _ZERO
    for x in xs:
        out = libmp.mpf_add(out, x, _RAD_PREC, "u")
    return out


def _up_mul(a, b):
    return libmp.mpf_mul(a, b, _RAD_PREC, "u")


def _up_div(a, b):
    return libmp.mpf_div(a, b, _RAD_PREC, "u")


def _raw_to_fraction(x) -> Fraction:
    p, q = libmp.to_rational(x)
    return Fraction(p, q)


def _fraction_up(q: Fraction):
    """Raw float >= |q|, at radius precision."""
    q = abs(q)
    return libmp.from_rational(q.numerator, q.denominator, _RAD_PREC, "u")


class BallReal:
    """Real number enclosure ``[mid - rad, mid + rad]``."""

    __slots__ = ("_mid", "_rad", "digits")

    def __init__(self, mid, rad=_ZERO, digits: int = 30):
        self._mid = mid
        self._rad = rad
        self.digits = int(digits)

    # -- construction -----------------------------------------------------
    @classmethod
    def exact(cls, q, digits: int = 30) -> "BallReal":
        """Ball around the rational ``q`` (radius = midpoint rounding only)."""
        return cls.from_fraction(as_fraction(q), Fraction(0), digits)

    @classmethod
    def from_fraction(cls, q: Fraction, err: Fraction = Fraction(0), digits: int = 30) -> "BallReal":
        prec = working_bits(digits)
        q = as_fraction(q)
        mid = libmp.from_rational(q.numerator, q.denominator, prec, "n")
        rad = _up_add(_ulp(mid, prec), _fraction_up(as_fraction(err)))
        return cls(mid, rad, digits)

    @classmethod
    def from_mpf(cls, x, rad=0, digits: int = 30) -> "BallReal":
        x = x if isinstance(x, mpmath.mpf) else mpmath.mpf(x)
        r = libmp.mpf_abs((rad if isinstance(rad, mpmath.mpf) else mpmath.mpf(rad))._mpf_)
        return cls(x._mpf_, r, digits)

    def _coerce(self, other) -> "BallReal":
        if isinstance(other, BallReal):
            return other
        if isinstance(other, (int, Fraction)):
            return BallReal.exact(other, self.digits)
        return NotImplemented

    # -- accessors --------------------------------------------------------
    @property
    def mid(self):
        return mpmath.mp.make_mpf(self._mid)

    @property
    def rad(self):
        return mpmath.mp.make_mpf(self._rad)

    @property
    def prec(self) -> int:
        return working_bits(self.digits)

    def lower(self) -> Fraction:
        return _raw_to_fraction(self._mid) - _raw_to_fraction(self._rad)

    def upper(self) -> Fraction:
        return _raw_to_fraction(self._mid) + _raw_to_fraction(self._rad)

    def width(self):
        return mpmath.mp.make_mpf(libmp.mpf_shift(self._rad, 1))

    def contains(self, x) -> bool:
        if isinstance(x, BallReal):
            return self.lower() <= x.lower() and x.upper() <= self.upper()
        if isinstance(x, (int, Fraction)):
            xq = Fraction(x)
        elif isinstance(x, mpmath.mpf):
            xq = _raw_to_fraction(x._mpf_)  # mpf(x) would re-round at the ambient precision
        else:
            xq = _raw_to_fraction(mpmath.mpf(x)._mpf_)
        return self.lower() <= xq <= self.upper()

    def overlaps(self, other: "BallReal") -> bool:
        return self.lower() <= other.upper() and other.lower() <= self.upper()

    def distance(self, other: "BallReal") -> Fraction:
        """Gap between two balls (0 when they overlap)."""
        gap = max(self.lower() - other.upper(), other.lower() - self.upper())
        return max(gap, Fraction(0))

    def is_positive(self) -> bool:
        return self.lower() > 0

    def is_negative(self) -> bool:
        return self.upper() < 0

    def contains_zero(self) -> bool:
        return self.lower() <= 0 <= self.upper()

    def rad_le(self, bound) -> bool:
        return _raw_to_fraction(self._rad) <= as_fraction(bound) if not isinstance(bound, float) \
            else float(self.rad) <= bound

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        return BallReal(libmp.mpf_neg(self._mid), self._rad, self.digits)

    def __pos__(self):
        return self

    def __abs__(self):
        if self._mid[0]:
            return -self
        return self

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = min(self.digits, other.digits)
        prec = working_bits(d)
        mid = libmp.mpf_add(self._mid, other._mid, prec, "n")
        rad = _up_add(self._rad, other._rad, _ulp(mid, prec))
        return BallReal(mid, rad, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = min(self.digits, other.digits)
        prec = working_bits(d)
        mid = libmp.mpf_mul(self._mid, other._mid, prec, "n")
        am = libmp.mpf_abs(self._mid)
        bm = libmp.mpf_abs(other._mid)
        rad = _up_add(_up_mul(am, other._rad), _up_mul(bm, self._rad),
                      _up_mul(self._rad, other._rad), _ulp(mid, prec))
        return BallReal(mid, rad, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = min(self.digits, other.digits)
        prec = working_bits(d)
        bm = libmp.mpf_abs(other._mid)
        den = libmp.mpf_sub(bm, other._rad, _RAD_PREC, "d")
        if not libmp.mpf_gt(den, _ZERO):
            raise ZeroDivisionError("divisor ball contains zero")
        mid = libmp.mpf_div(self._mid, other._mid, prec, "n")
        q_up = _up_add(libmp.mpf_abs(mid), _ulp(mid, prec))
        rad = _up_add(_up_div(_up_add(self._rad, _up_mul(q_up, other._rad)), den), _ulp(mid, prec))
        return BallReal(mid, rad, d)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return pow_int(self, k)

    def with_digits(self, digits: int) -> "BallReal":
        return BallReal(self._mid, self._rad, digits)

    # -- output -----------------------------------------------------------
    def mid_str(self, dps: int | None = None) -> str:
        return libmp.to_str(self._mid, dps or self.digits + 5)

    def rad_str(self) -> str:
        # inflate slightly so a 6-significant-digit print never understates
        r = libmp.mpf_mul(self._rad, libmp.from_rational(1001, 1000, _RAD_PREC, "u"), _RAD_PREC, "u")
        return libmp.to_str(r, 6)

    def to_json(self) -> dict:
        return {"mid": self.mid_str(), "rad": self.rad_str(), "digits": self.digits}

    def __float__(self):
        return libmp.to_float(self._mid)

    def __repr__(self):
        return f"BallReal({self.mid_str(min(self.digits, 25))} +/- {self.rad_str()})"


# -- elementary functions ------------------------------------------------

def pow_int(x: BallReal, k: int) -> BallReal:
    if k < 0:
        return BallReal.exact(1, x.digits) / pow_int(x, -k)
    result = BallReal.exact(1, x.digits)
    base = x
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def exp(x: BallReal) -> BallReal:
    prec = x.prec
    em = libmp.mpf_exp(x._mid, prec + 16, "n")
    mid = libmp.mpf_pos(em, prec, "n")
    # |exp(m+e) - exp(m)| <= exp(m) * r * exp(r)
    spread = _up_mul(_up_mul(libmp.mpf_abs(em), x._rad), libmp.mpf_exp(x._rad, _RAD_PREC, "u"))
    lib_err = libmp.mpf_shift(libmp.mpf_abs(em), -prec - 8)
    rad = _up_add(spread, lib_err, _ulp(mid, prec))
    rad = _up_mul(rad, libmp.from_rational(1 + 2 ** 20, 2 ** 20, _RAD_PREC, "u"))
    return BallReal(mid, rad, x.digits)


def ln(x: BallReal) -> BallReal:
    low = libmp.mpf_sub(x._mid, x._rad, _RAD_PREC * 4, "d")
    if not libmp.mpf_gt(low, _ZERO):
        raise DomainError("ln needs a strictly positive ball")
    prec = x.prec
    lm = libmp.mpf_log(x._mid, prec + 16, "n")
    mid = libmp.mpf_pos(lm, prec, "n")
    spread = _up_div(x._rad, low)
    lib_err = libmp.mpf_shift(_up_add(libmp.mpf_abs(lm), libmp.fone), -prec - 8)
    rad = _up_add(spread, lib_err, _ulp(mid, prec))
    return BallReal(mid, rad, x.digits)


def sqrt(x: BallReal) -> BallReal:
    low = libmp.mpf_sub(x._mid, x._rad, _RAD_PREC * 4, "d")
    if libmp.mpf_lt(low, _ZERO):
        raise DomainError("sqrt needs a non-negative ball")
    prec = x.prec
    if x._mid == _ZERO:
        return BallReal(_ZERO, _ZERO, x.digits)
    sm = libmp.mpf_sqrt(x._mid, prec + 16, "n")
    mid = libmp.mpf_pos(sm, prec, "n")
    sm_down = libmp.mpf_sqrt(x._mid, _RAD_PREC, "d")
    spread = _up_div(x._rad, sm_down) if x._rad != _ZERO else _ZERO
    lib_err = libmp.mpf_shift(libmp.mpf_abs(sm), -prec - 8)
    rad = _up_add(spread, lib_err, _ulp(mid, prec))
    return BallReal(mid, rad, x.digits)


def elementary(fn: str, x: BallReal, k: int | None = None, digits: int | None = None) -> BallReal:
    """Dispatch ``exp``/``ln``/``sqrt``/``pow_int`` by name."""
    if digits is not None:
        x = x.with_digits(digits)
    if fn == "exp":
        return exp(x)
    if fn in ("ln", "log"):
        return ln(x)
    if fn == "sqrt":
        return sqrt(x)
    if fn == "pow_int":
        if k is None:
            raise ValueError("pow_int needs an integer exponent")
        return pow_int(x, k)
    raise ValueError(f"unsupported elementary function {fn!r}")


# -- constants -----------------------------------------------------------
# Each helper returns (approximation, error bound) as exact rationals.

def _atan_inv(x: int, eps: Fraction) -> tuple[Fraction, Fraction]:
    s = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * x ** (2 * k + 1))
        if term < eps:
            return s, term  # alternating, decreasing: tail below first omitted term
        s += term if k % 2 == 0 else -term
        k += 1


def _pi_enclosure(eps: Fraction) -> tuple[Fraction, Fraction]:
    # Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    a, ea = _atan_inv(5, eps / 64)
    b, eb = _atan_inv(239, eps / 64)
    return 16 * a - 4 * b, 16 * ea + 4 * eb


def _log2_enclosure(eps: Fraction) -> tuple[Fraction, Fraction]:
    # log 2 = 2 atanh(1/3) = sum 2 / ((2k+1) 3^(2k+1))
    s = Fraction(0)
    k = 0
    while True:
        term = Fraction(2, (2 * k + 1) * 3 ** (2 * k + 1))
        if term < eps / 2:
            return s, term * Fraction(9, 8)
        s += term
        k += 1


def _catalan_enclosure(eps: Fraction) -> tuple[Fraction, Fraction]:
    # Cohen-Rodriguez Villegas-Zagier acceleration of sum (-1)^k/(2k+1)^2;
    # 1/(2k+1)^2 is a moment sequence of a positive weight, so
    # |S - S_n| <= 2 S / (3+sqrt 8)^n <= 2 (5/29)^n.
    n = 1
    while 2 * Fraction(5, 29) ** n >= eps:
        n += 1
    t_prev, t = 1, 3
    for _ in range(n - 1):
        t_prev, t = t, 6 * t - t_prev
    d = t if n >= 1 else 1
    b = Fraction(-1)
    c = Fraction(-d)
    s = Fraction(0)
    for k in range(n):
        c = b - c
        s += c * Fraction(1, (2 * k + 1) ** 2)
        b = b * 2 * (k + n) * (k - n) / ((2 * k + 1) * (k + 1))
    return s / d, 2 * Fraction(5, 29) ** n


def _zeta_enclosure(s: int, digits: int) -> tuple[Fraction, Fraction]:
    """Euler-Maclaurin for zeta(s), s >= 2.

    For x^-s all even derivatives are positive, so the remainder after the
    j-th correction lies between 0 and the first omitted term.
    """
    if s < 2:
        raise ValueError("zeta(s) needs s >= 2")
    eps = Fraction(1, 10 ** digits)
    N = max(8, digits // 2 + s // 2)
    head = sum((Fraction(1, k ** s) for k in range(1, N)), Fraction(0))
    head += Fraction(1, (s - 1) * N ** (s - 1)) + Fraction(1, 2 * N ** s)
    poch = s  # (s)_(2j-1)
    j = 1
    while True:
        term = bernoulli(2 * j) / math.factorial(2 * j) * poch / Fraction(N ** (s + 2 * j - 1))
        if abs(term) < eps / 4:
            return head, 2 * abs(term)
        head += term
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        j += 1
        if j > 4 * N:
            raise RuntimeError("Euler-Maclaurin failed to converge")


def _euler_gamma_ball(digits: int) -> BallReal:
    # gamma = H_N - ln N - 1/(2N) + sum_{j} B_2j / (2j N^2j), remainder below first omitted term
    eps = Fraction(1, 10 ** (digits + 4))
    N = max(10, digits)
    head = sum((Fraction(1, k) for k in range(1, N + 1)), Fraction(0)) - Fraction(1, 2 * N)
    j = 1
    while True:
        term = bernoulli(2 * j) / (2 * j * Fraction(N) ** (2 * j))
        if abs(term) < eps:
            err = 2 * abs(term)
            break
        head += term
        j += 1
    work = digits + 6
    return BallReal.from_fraction(head, err, work) - ln(BallReal.exact(N, work))


_ZETA_RE = re.compile(r"^zeta\((\d+)\)$")


def _canonical_name(name: str) -> str:
    name = name.strip()
    aliases = {"G": "catalan", "log(2)": "log2", "ln2": "log2", "gamma": "euler_gamma"}
    return aliases.get(name, name)


@lru_cache(maxsize=512)
def const_eval(name: str, digits: int) -> BallReal:
    """Ball for a named constant with radius at most 10**-digits."""
    if digits < 10:
        raise ValueError("digits must be >= 10")
    name = _canonical_name(name)
    work = digits + 4
    eps = Fraction(1, 10 ** (digits + 2))
    if name == "pi":
        v, e = _pi_enclosure(eps)
    elif name == "log2":
        v, e = _log2_enclosure(eps)
    elif name == "catalan":
        v, e = _catalan_enclosure(eps)
    elif name == "euler_gamma":
        return _euler_gamma_ball(digits).with_digits(work)
    else:
        m = _ZETA_RE.match(name)
        if not m:
            raise ValueError(f"unsupported constant {name!r}")
        v, e = _zeta_enclosure(int(m.group(1)), digits + 2)
    return BallReal.from_fraction(v, e, work)


def pi_power(half_exponent: int, digits: int) -> BallReal:
    """pi**(half_exponent/2) as a ball."""
    pi = const_eval("pi", digits)
    if half_exponent % 2 == 0:
        return pow_int(pi, half_exponent // 2)
    root = sqrt(pi)
    return pow_int(root, half_exponent)


def magnitude_digits(q) -> int:
    """Cheap upper bound on max(0, log10|q|) + 1 for an exact rational."""
    q = abs(as_fraction(q))
    if q == 0:
        return 0
    # log10(2) < 0.30103; bit lengths give |q| < 2^(bn - bd + 1)
    return max(0, int((q.numerator.bit_length() - q.denominator.bit_length() + 1) * 0.30103) + 2)


_PI_LABEL = re.compile(r"^pi(\d*)$")


def label_value(label: str, digits: int) -> BallReal:
    """Numeric value of a linear-form basis label."""
    if label == "one":
        return BallReal.exact(1, digits)
    if label == "G":
        return const_eval("catalan", digits)
    if label == "log2":
        return const_eval("log2", digits)
    m = _PI_LABEL.match(label)
    if m:
        k = int(m.group(1) or 1)
        return pow_int(const_eval("pi", digits + 2 * k), k).with_digits(digits)
    if _ZETA_RE.match(label):
        return const_eval(label, digits)
    raise ValueError(f"unknown basis label {label!r}")


def evaluate_form(form, digits: int) -> BallReal:
    """Evaluate a linear form ``{label: Fraction}`` (or an object with
    ``.coefficients``) with absolute radius at most about 10**-digits."""
    coeffs = getattr(form, "coefficients", form)
    scale = sum((abs(c) for c in coeffs.values()), Fraction(0))
    extra = magnitude_digits(scale)
    inner = digits + extra + 4
    total = BallReal.exact(0, inner)
    for label, c in coeffs.items():
        if c == 0:
            continue
        total = total + label_value(label, inner) * c
    return total.with_digits(digits)
