"""Exact integer and rational helpers.

Rationals are plain :class:`fractions.Fraction` objects throughout the package.
Gamma values at half-integers are returned as :class:`PiMonomial`, an exact
rational multiple of a power of sqrt(pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

RationalLike = Union[int, Fraction, str]

__all__ = [
    "Fraction",
    "PiMonomial",
    "PoleError",
    "as_fraction",
    "bernoulli",
    "fraction_to_json",
    "fraction_from_json",
    "gamma_half",
    "gamma_ratio",
    "is_half_integer",
    "lcm_upto",
    "pochhammer",
]


class PoleError(ValueError):
    """Raised when a Gamma argument is a non-positive integer."""


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/2"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fraction_to_json(q: Fraction) -> str:
    q = as_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def fraction_from_json(s: str) -> Fraction:
    return Fraction(s)


def is_half_integer(x: Fraction) -> bool:
    """True for elements of (1/2)Z (integers included)."""
    return (2 * as_fraction(x)).denominator == 1


def lcm_upto(N: int) -> int:
    """Least common multiple of 1..N, with d_N = 1 for N <= 1."""
    if N < 0:
        raise ValueError("N must be non-negative")
    d = 1
    for k in range(2, N + 1):
        d = d * k // math.gcd(d, k)
    return d


@lru_cache(maxsize=None)
def _bernoulli_table(k: int) -> tuple[Fraction, ...]:
    # B_0..B_k from sum_{j=0}^{m} C(m+1, j) B_j = 0
    B = [Fraction(1)]
    for m in range(1, k + 1):
        s = sum((math.comb(m + 1, j) * B[j] for j in range(m)), Fraction(0))
        B.append(-s / (m + 1))
    return tuple(B)


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k for even k >= 0 (B_1 = -1/2 convention)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k % 2 == 1 and k > 1:
        raise ValueError("odd Bernoulli numbers beyond B_1 vanish; refusing")
    return _bernoulli_table(k)[k]


def pochhammer(a: RationalLike, k: int) -> Fraction:
    """Rising factorial (a)_k for integer k >= 0."""
    a = as_fraction(a)
    out = Fraction(1)
    for j in range(k):
        out *= a + j
    return out


@dataclass(frozen=True)
class PiMonomial:
    """Exact value ``coeff * pi**(half_pi_exponent / 2)``.

    The exponent may be negative (Gamma at half-integers in a denominator).
    A zero coefficient always carries exponent 0.
    """

    coeff: Fraction
    half_pi_exponent: int = 0

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_fraction(self.coeff))
        if self.coeff == 0 and self.half_pi_exponent != 0:
            object.__setattr__(self, "half_pi_exponent", 0)

    def __mul__(self, other):
        if isinstance(other, PiMonomial):
            return PiMonomial(self.coeff * other.coeff,
                              self.half_pi_exponent + other.half_pi_exponent)
        return PiMonomial(self.coeff * as_fraction(other), self.half_pi_exponent)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PiMonomial):
            if other.coeff == 0:
                raise ZeroDivisionError("division by zero PiMonomial")
            return PiMonomial(self.coeff / other.coeff,
                              self.half_pi_exponent - other.half_pi_exponent)
        return PiMonomial(self.coeff / as_fraction(other), self.half_pi_exponent)

    def __add__(self, other):
        if not isinstance(other, PiMonomial):
            other = PiMonomial(as_fraction(other), 0)
        if self.coeff == 0:
            return other
        if other.coeff == 0:
            return self
        if self.half_pi_exponent != other.half_pi_exponent:
            raise ValueError("cannot add PiMonomials with different pi exponents")
        return PiMonomial(self.coeff + other.coeff, self.half_pi_exponent)

    def __neg__(self):
        return PiMonomial(-self.coeff, self.half_pi_exponent)

    def __pow__(self, k: int):
        return PiMonomial(self.coeff ** k, self.half_pi_exponent * k)

    def __str__(self):
        e = self.half_pi_exponent
        if e == 0:
            return str(self.coeff)
        return f"{self.coeff}*pi^({e}/2)"

    def to_json(self) -> dict:
        return {"coeff": fraction_to_json(self.coeff), "half_pi_exponent": self.half_pi_exponent}


def gamma_half(a: RationalLike) -> PiMonomial:
    """Gamma(a) for a in (1/2)Z, exactly.

    Integers give (a-1)!; half-odd arguments give a rational multiple of
    sqrt(pi), reached from Gamma(1/2) by the functional equation in either
    direction.
    """
    a = as_fraction(a)
    if a.denominator == 1:
        if a <= 0:
            raise PoleError(f"Gamma has a pole at {a}")
        return PiMonomial(Fraction(math.factorial(int(a) - 1)), 0)
    if a.denominator != 2:
        raise ValueError(f"gamma_half needs a half-integer argument, got {a}")
    m = math.floor(a)  # a = m + 1/2
    if m >= 0:
        c = Fraction(math.factorial(2 * m), 4 ** m * math.factorial(m))
    else:
        # Gamma(1/2 - j) = (-4)^j j! / (2j)! sqrt(pi)
        j = -m
        c = Fraction((-4) ** j * math.factorial(j), math.factorial(2 * j))
    return PiMonomial(c, 1)


def gamma_ratio(numerator_args: Iterable[RationalLike],
                denominator_args: Iterable[RationalLike] = ()) -> PiMonomial:
    """Product of Gamma over ``numerator_args`` divided by the product over ``denominator_args``."""
    out = PiMonomial(Fraction(1), 0)
    for a in numerator_args:
        out = out * gamma_half(a)
    for b in denominator_args:
        out = out / gamma_half(b)
    return out
