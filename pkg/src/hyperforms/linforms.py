"""Exact linear forms over a basis of labelled constants.

Basis labels: ``one``, ``G`` (Catalan), ``log2``, ``pi`` / ``pi2`` / ``pi3`` ...
(powers of pi) and ``zeta(i)``.  The module also holds the reduction table
that expresses the building blocks

    Z_i(f) = sum_{j>=0} (j+f)^-i            (i = 1 regularised as -psi(f) - gamma)
    A_i(f) = sum_{j>=0} (-1)^j (j+f)^-i

for f in {1, 1/2, 1/4, 3/4} as such forms.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .exact import as_fraction, bernoulli, fraction_to_json

__all__ = [
    "ConstantLinearForm",
    "UnsupportedResidueError",
    "alternating_block",
    "beta_odd",
    "euler_number",
    "hurwitz_block",
    "zeta_even_over_pi",
]

_ZETA = re.compile(r"^zeta\((\d+)\)$")
_PI = re.compile(r"^pi(\d*)$")


class UnsupportedResidueError(ValueError):
    """A summand needs a constant outside the supported basis."""


def _label_key(label: str):
    if label == "one":
        return (0, 0)
    if label == "G":
        return (1, 0)
    if label == "log2":
        return (2, 0)
    m = _PI.match(label)
    if m:
        return (3, int(m.group(1) or 1))
    m = _ZETA.match(label)
    if m:
        return (4, int(m.group(1)))
    return (9, label)


def pi_label(k: int) -> str:
    return "pi" if k == 1 else f"pi{k}"


class ConstantLinearForm:
    """Immutable map ``label -> Fraction``; absent labels are zero."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Mapping[str, object] | None = None):
        c = {}
        for k, v in (coefficients or {}).items():
            v = as_fraction(v)
            if v != 0:
                c[k] = c.get(k, Fraction(0)) + v
        self._c = {k: c[k] for k in sorted(c, key=_label_key) if c[k] != 0}

    @property
    def coefficients(self) -> dict[str, Fraction]:
        return dict(self._c)

    def __getitem__(self, label: str) -> Fraction:
        return self._c.get(label, Fraction(0))

    def labels(self) -> list[str]:
        return list(self._c)

    def __iter__(self):
        return iter(self._c.items())

    def __add__(self, other: "ConstantLinearForm") -> "ConstantLinearForm":
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, Fraction(0)) + v
        return ConstantLinearForm(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ConstantLinearForm({k: -v for k, v in self._c.items()})

    def __mul__(self, scalar):
        s = as_fraction(scalar)
        return ConstantLinearForm({k: v * s for k, v in self._c.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ConstantLinearForm):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def is_zero(self) -> bool:
        return not self._c

    def to_pi_basis(self) -> "ConstantLinearForm":
        """Rewrite every zeta(2k) as a rational multiple of pi^(2k)."""
        out: dict[str, Fraction] = {}
        for k, v in self._c.items():
            m = _ZETA.match(k)
            if m and int(m.group(1)) % 2 == 0:
                i = int(m.group(1))
                lab = pi_label(i)
                out[lab] = out.get(lab, Fraction(0)) + v * zeta_even_over_pi(i)
            else:
                out[k] = out.get(k, Fraction(0)) + v
        return ConstantLinearForm(out)

    def restricted_to(self, allowed: Iterable[str]) -> list[str]:
        """Labels carrying a nonzero coefficient outside ``allowed``."""
        allowed = set(allowed)
        return [k for k in self._c if k not in allowed]

    def to_json(self) -> dict:
        return {"basis": list(self._c), "coeffs": [fraction_to_json(v) for v in self._c.values()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "ConstantLinearForm":
        return cls(dict(zip(data["basis"], (Fraction(s) for s in data["coeffs"]))))

    def __repr__(self):
        if not self._c:
            return "ConstantLinearForm(0)"
        parts = [f"({v})*{k}" if k != "one" else f"({v})" for k, v in self._c.items()]
        return "ConstantLinearForm(" + " + ".join(parts) + ")"


@lru_cache(maxsize=None)
def euler_number(k: int) -> int:
    """Euler (secant) number E_k; zero for odd k."""
    if k % 2:
        return 0
    E = [1]
    for n in range(1, k // 2 + 1):
        E.append(-sum(math.comb(2 * n, 2 * j) * E[j] for j in range(n)))
    return E[k // 2]


def zeta_even_over_pi(i: int) -> Fraction:
    """zeta(i) / pi^i for even i >= 2."""
    if i < 2 or i % 2:
        raise ValueError("need even i >= 2")
    return abs(bernoulli(i)) * Fraction(2 ** (i - 1), math.factorial(i))


def beta_odd(i: int) -> Fraction:
    """Dirichlet beta(i) / pi^i for odd i >= 1."""
    if i % 2 == 0:
        raise UnsupportedResidueError(f"beta({i}) is not in the constant basis")
    k = (i - 1) // 2
    return Fraction((-1) ** k * euler_number(2 * k), 4 ** (k + 1) * math.factorial(2 * k))


def _beta_form(i: int) -> dict[str, Fraction]:
    if i == 2:
        return {"G": Fraction(1)}
    return {pi_label(i): beta_odd(i)}


@lru_cache(maxsize=None)
def hurwitz_block(i: int, f: Fraction) -> ConstantLinearForm:
    """Z_i(f) = sum_{j>=0} (j+f)^-i; i = 1 means -psi(f) - gamma."""
    f = as_fraction(f)
    if f == 1:
        return ConstantLinearForm({} if i == 1 else {f"zeta({i})": 1})
    if f == Fraction(1, 2):
        if i == 1:
            return ConstantLinearForm({"log2": 2})
        return ConstantLinearForm({f"zeta({i})": 2 ** i - 1})
    if f in (Fraction(1, 4), Fraction(3, 4)):
        sign = 1 if f == Fraction(1, 4) else -1
        if i == 1:
            return ConstantLinearForm({"pi": Fraction(sign, 2), "log2": 3})
        if i > 2 and i % 2 == 0:
            raise UnsupportedResidueError(f"order {i} pole at a quarter residue needs beta({i})")
        # zeta(i, 1/4 or 3/4) = ((4^i - 2^i) zeta(i) +/- 4^i beta(i)) / 2
        out = {f"zeta({i})": Fraction(4 ** i - 2 ** i, 2)}
        for k, v in _beta_form(i).items():
            out[k] = sign * v * Fraction(4 ** i, 2)
        return ConstantLinearForm(out)
    raise UnsupportedResidueError(f"residue class {f} not in the reduction table")


@lru_cache(maxsize=None)
def alternating_block(i: int, f: Fraction) -> ConstantLinearForm:
    """A_i(f) = sum_{j>=0} (-1)^j (j+f)^-i."""
    f = as_fraction(f)
    if f == 1:
        if i == 1:
            return ConstantLinearForm({"log2": 1})
        return ConstantLinearForm({f"zeta({i})": 1 - Fraction(1, 2 ** (i - 1))})
    if f == Fraction(1, 2):
        if i > 2 and i % 2 == 0:
            raise UnsupportedResidueError(f"alternating order {i} at a half residue needs beta({i})")
        return ConstantLinearForm({k: v * 2 ** i for k, v in _beta_form(i).items()})
    raise UnsupportedResidueError(f"alternating sums at residue {f} are not supported")
