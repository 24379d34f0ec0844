"""Certified evaluation of hypergeometric-type series at z = +1 and z = -1.

Every series handled here has term ratio ``t_{k+1}/t_k = z P(k)/Q(k)`` with
polynomials P, Q.  The first K terms are summed exactly.  The tail from K on
is handled by an approximate antidifference

    y(k) = sum_{j=j0}^{M} y_j k^-j,   z y(k+1) P(k)/Q(k) - y(k) = 1 + eps(k),

which gives  sum_{k>=K} t_k = -y(K) t_K - sum_{k>=K} eps(k) t_k.  The
rational function eps is known exactly, is O(k^-m) with an explicit constant,
and |t_k| <= |t_K| for k >= K is proved by a coefficient-positivity test, so
the remaining sum is bounded rigorously.  This converges quickly even for the
slowly decaying z = 1 series that a geometric ratio bound cannot handle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .ball import BallReal, magnitude_digits, pi_power
from .exact import PiMonomial, as_fraction
from .ratfunc import (FactoredRationalFunction, PartialFractionExpansion, PoleOnGridError,
                      poly_eval, poly_from_roots, poly_mul, poly_shift, poly_trim)

__all__ = [
    "ConvergenceError",
    "LowerPoleError",
    "PfqSpec",
    "SeriesTail",
    "certified_tail",
    "eval_pfq",
    "eval_prefactored",
    "sum_rational_series",
]


class ConvergenceError(ValueError):
    """Series diverges or its convergence margin is too small to certify."""


class LowerPoleError(ValueError):
    """A lower parameter is a non-positive integer reached by the summation."""


@dataclass(frozen=True)
class PfqSpec:
    upper: tuple
    lower: tuple
    argument: int = 1

    def __post_init__(self):
        up = tuple(as_fraction(a) for a in self.upper)
        lo = tuple(as_fraction(b) for b in self.lower)
        for x in up + lo:
            if x.denominator not in (1, 2, 4):
                raise ValueError(f"parameter {x} has denominator outside 1, 2, 4")
        if self.argument not in (1, -1):
            raise ValueError("argument must be +1 or -1")
        object.__setattr__(self, "upper", up)
        object.__setattr__(self, "lower", lo)

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def terminates_at(self) -> int | None:
        """Index of the last nonzero term, or None for an infinite series."""
        ns = [-a for a in self.upper if a.denominator == 1 and a <= 0]
        return int(min(ns)) if ns else None

    def margin(self) -> Fraction:
        """sum(lower) - sum(upper); the z = 1 series converges iff this is > 0 (p = q + 1)."""
        return sum(self.lower, Fraction(0)) - sum(self.upper, Fraction(0))

    def term_ratio(self) -> tuple[list, list]:
        """(P, Q) with t_{k+1}/t_k = z P(k)/Q(k)."""
        P = poly_from_roots(_count([-a for a in self.upper]))
        Q = poly_from_roots(_count([Fraction(-1)] + [-b for b in self.lower]))
        return P, Q

    def to_json(self) -> dict:
        return {"upper": [str(a) for a in self.upper], "lower": [str(b) for b in self.lower],
                "argument": self.argument}


def _count(roots: Iterable[Fraction]) -> dict:
    out: dict = {}
    for r in roots:
        out[r] = out.get(r, 0) + 1
    return out


# -- tail engine -------------------------------------------------------------

@dataclass(frozen=True)
class SeriesTail:
    """sum_{k>=K} t_k lies in value +- error."""

    value: Fraction
    error: Fraction
    K: int
    order: int


def _nonneg_coeffs(poly: list) -> bool:
    return all(c >= 0 for c in poly)


def _monotone_from(P: list, Q: list, K: int) -> bool:
    """|P(k)/Q(k)| <= 1 and Q(k) > 0 for every real k >= K (sufficient test)."""
    QK = poly_shift(Q, K)
    if not QK or QK[0] <= 0 or not _nonneg_coeffs(QK):
        return False
    diff = poly_shift(_sub(Q, P), K)
    summ = poly_shift(_add(Q, P), K)
    return _nonneg_coeffs(diff) and _nonneg_coeffs(summ)


def _add(a, b):
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def _sub(a, b):
    return _add(a, [-x for x in b])


def _ratio_series(P: list, Q: list, order: int) -> list:
    """Coefficients of P(k)/Q(k) in u = 1/k up to u^(order-1) (equal degrees)."""
    p = len(P) - 1
    Pt = [P[p - m] if m <= p else Fraction(0) for m in range(order)]
    Qt = [Q[p - m] if m <= p else Fraction(0) for m in range(order)]
    out = []
    for n in range(order):
        s = Pt[n] - sum((out[i] * Qt[n - i] for i in range(n)), Fraction(0))
        out.append(s / Qt[0])
    return out


def _inv_binom(j: int, order: int) -> list:
    """Coefficients of (1 + u)^-j."""
    out = []
    c = Fraction(1)
    for i in range(order):
        if i:
            c = c * (-j - i + 1) / i
        out.append(c)
    return out


def _antidifference(P: list, Q: list, z: int, M: int) -> dict:
    """Coefficients y_j (j from -1 or 0 up to M) of the formal antidifference."""
    order = M + 3
    rho = _ratio_series(P, Q, order + 1)
    y: dict = {}
    if z == 1:
        # y_j u^{j+1} c'_j(u); c'_j = ((1+u)^-j r(u) - 1)/u
        cache = {}

        def cprime(j):
            if j not in cache:
                s = _inv_binom(j, order + 1)
                prod = [sum((s[i] * rho[n - i] for i in range(n + 1)), Fraction(0)) for n in range(order + 1)]
                prod[0] -= 1
                cache[j] = prod[1:]
            return cache[j]

        for n in range(M + 2):
            j = n - 1
            rhs = Fraction(1 if n == 0 else 0)
            for jj in range(-1, j):
                rhs -= y[jj] * cprime(jj)[n - 1 - jj]
            lead = cprime(j)[0]
            if lead == 0:
                raise ConvergenceError("antidifference is singular (resonant exponent)")
            y[j] = rhs / lead
    else:
        cache = {}

        def cfull(j):
            if j not in cache:
                s = _inv_binom(j, order)
                prod = [-sum((s[i] * rho[n - i] for i in range(n + 1)), Fraction(0)) for n in range(order)]
                prod[0] -= 1
                cache[j] = prod
            return cache[j]

        for n in range(M + 1):
            rhs = Fraction(1 if n == 0 else 0)
            for jj in range(n):
                rhs -= y[jj] * cfull(jj)[n - jj]
            y[n] = rhs / cfull(n)[0]
    return y


def _binom_poly(M: int) -> list:
    return [Fraction(math.comb(M, i)) for i in range(M + 1)]


def _tail_bound(P, Q, z, K, M):
    """(value, error, decay order m) of the tail normalised by t_K = 1."""
    y = _antidifference(P, Q, z, M)
    top = max(M - j for j in y)
    A = [Fraction(0)] * (top + 1)
    for j, c in y.items():
        A[M - j] = c
    kM = [Fraction(0)] * M + [Fraction(1)]
    k1M = _binom_poly(M)
    N = _sub(poly_mul(poly_mul(poly_shift(A, 1), kM), P) if z == 1
             else [-c for c in poly_mul(poly_mul(poly_shift(A, 1), kM), P)],
             poly_mul(poly_mul(_add(A, kM), k1M), Q))
    p = len(Q) - 1
    lead = Q[-1]
    if not N:
        E, m = Fraction(0), 2 * M + p
    else:
        d = len(N) - 1
        m = 2 * M + p - d
        den = abs(lead) - sum((abs(Q[j]) * Fraction(1, K ** (p - j)) for j in range(p)), Fraction(0))
        if den <= 0 or m <= 1:
            return None
        num = sum((abs(N[j]) * Fraction(1, K ** (d - j)) for j in range(d + 1)), Fraction(0))
        E = num / den
    yK = poly_eval(A, K) / Fraction(K) ** M
    err = E * (Fraction(1, K ** m) + Fraction(1, (m - 1) * K ** (m - 1))) if E else Fraction(0)
    return -yK, err, m


def certified_tail(P: list, Q: list, z: int, K: int, tK: Fraction, digits: int,
                   M: int | None = None) -> SeriesTail | None:
    """Enclose sum_{k>=K} t_k for t_{k+1} = t_k z P(k)/Q(k), given t_K.

    Returns None if K is too small for the monotonicity or bound tests.
    """
    if tK == 0:
        return SeriesTail(Fraction(0), Fraction(0), K, 0)
    if Q[-1] < 0:
        P, Q = [-c for c in P], [-c for c in Q]
    if not _monotone_from(P, Q, K):
        return None
    if M is None:
        M = max(4, (digits * 2) // 3 + 4)
    res = _tail_bound(P, Q, z, K, M)
    if res is None:
        return None
    v, e, m = res
    return SeriesTail(v * tK, e * abs(tK), K, m)


def _geometric_tail(P, Q, z, K, tK):
    """Tail bound when deg P < deg Q: |ratio| <= 1/2 from K on gives |tail| <= 2|t_K|."""
    if Q[-1] < 0:
        P, Q = [-c for c in P], [-c for c in Q]
    twoP = [2 * c for c in P]
    QK = poly_shift(Q, K)
    if not QK or QK[0] <= 0 or not _nonneg_coeffs(QK):
        return None
    if _nonneg_coeffs(poly_shift(_sub(Q, twoP), K)) and _nonneg_coeffs(poly_shift(_add(Q, twoP), K)):
        return SeriesTail(Fraction(0), 2 * abs(tK), K, 0)
    return None


def _sum_with_tail(head_terms, P, Q, z, digits, start_K):
    """Drive the head/tail split: ``head_terms(K)`` yields (exact head sum, t_K)."""
    target = Fraction(1, 10 ** (digits + 3))
    degP = len(P) - 1
    degQ = len(Q) - 1
    if degP > degQ:
        raise ConvergenceError("terms grow without bound")
    K = max(start_K, 8)
    if degP < degQ:
        while True:
            head, tK = head_terms(K)
            tail = _geometric_tail(P, Q, z, K, tK)
            if tail is not None and tail.error <= target:
                return head, tail
            K = K * 3 // 2 + 4
    if P[-1] != Q[-1]:
        raise ConvergenceError("leading coefficients differ: geometric growth or decay")
    sigma = (Q[-2] - P[-2]) / Q[-1] if degQ >= 1 else Fraction(0)
    if z == 1 and sigma <= 1:
        raise ConvergenceError("series at z = 1 diverges")
    if z == -1 and sigma <= 0:
        raise ConvergenceError("alternating series terms do not tend to zero")
    K = max(K, 2 * digits + 10)
    M = max(4, (digits * 2) // 3 + 4)
    for _ in range(40):
        head, tK = head_terms(K)
        tail = certified_tail(P, Q, z, K, tK, digits, M)
        if tail is not None and tail.error <= target:
            return head, tail
        if tail is None:
            K = K * 3 // 2 + 4
        else:
            K = K * 3 // 2 + 4
            M = M + max(2, M // 4)
    raise ConvergenceError("could not certify the tail")


# -- hypergeometric series -------------------------------------------------

class _TermCache:
    """Exact terms t_k and partial sums, extended on demand."""

    def __init__(self, t0: Fraction, step):
        self.terms = [t0]
        self.sums = [Fraction(0)]
        self.step = step

    def head(self, K: int):
        while len(self.terms) <= K:
            k = len(self.terms) - 1
            self.sums.append(self.sums[-1] + self.terms[-1])
            self.terms.append(self.step(k, self.terms[-1]))
        return self.sums[K], self.terms[K]


def eval_pfq(spec: PfqSpec, digits: int) -> BallReal:
    """Enclosure of pFq(upper; lower; z) with radius about 10**-digits."""
    z = spec.argument
    N = spec.terminates_at()
    for b in spec.lower:
        # even when an upper parameter terminates the series first, the value is a 0/0 limit
        if b.denominator == 1 and b <= 0:
            raise LowerPoleError(f"lower parameter {b} is a non-positive integer")
    if N is not None:
        t = Fraction(1)
        s = Fraction(0)
        for k in range(N + 1):
            s += t
            if k < N:
                t = _step(spec, k, t)
        return _ball(s, Fraction(0), digits)
    if z == 1 and spec.p == spec.q + 1 and spec.margin() <= Fraction(1, 2):
        raise ConvergenceError(f"convergence margin {spec.margin()} <= 1/2 refused")
    P, Q = spec.term_ratio()
    cache = _TermCache(Fraction(1), lambda k, t: _step(spec, k, t))
    head, tail = _sum_with_tail(cache.head, P, Q, z, digits, 0)
    return _ball(head + tail.value, tail.error, digits)


def _step(spec: PfqSpec, k: int, t: Fraction) -> Fraction:
    num = Fraction(spec.argument)
    for a in spec.upper:
        num *= a + k
    den = Fraction(k + 1)
    for b in spec.lower:
        den *= b + k
    return t * num / den


def eval_prefactored(prefactor: PiMonomial, spec: PfqSpec, digits: int) -> BallReal:
    """prefactor * pFq, with the series evaluated at enough digits to absorb the prefactor."""
    c = prefactor.coeff
    if c == 0:
        return BallReal.exact(0, digits)
    e = prefactor.half_pi_exponent
    boost = magnitude_digits(c) + abs(e) + 4
    series = eval_pfq(spec, digits + boost)
    pf = pi_power(e, digits + boost) * c if e else BallReal.exact(c, digits + boost)
    return (pf * series).with_digits(digits)


# -- rational series -------------------------------------------------------

def sum_rational_series(R, start: int = 0, offset=Fraction(0), alternating: bool = False,
                        digits: int = 30) -> BallReal:
    """Direct certified summation of sum_{nu >= start} (+-1)^nu R(nu + offset).

    ``R`` is a FactoredRationalFunction or PartialFractionExpansion.  Terms are
    evaluated exactly; no partial-fraction constants are used, so this serves
    as an independent oracle for :func:`hyperforms.ratfunc.sum_linear_form`.
    """
    offset = as_fraction(offset)
    if isinstance(R, PartialFractionExpansion):
        num, den = R.polynomials()
        f = lambda t: poly_eval(num, t) / poly_eval(den, t)
        # ratio from the polynomial form: roots unknown, so use polynomials directly
        Pk = lambda h: poly_shift(num, h)
        Dk = lambda h: poly_shift(den, h)
        P = poly_mul(Pk(offset + 1), Dk(offset))
        Q = poly_mul(Pk(offset), Dk(offset + 1))
        poles = None
    elif isinstance(R, FactoredRationalFunction):
        f = R.evaluate
        nr, dr = dict(R.numerator), dict(R.denominator)
        # P(k) = N(k+1+off) D(k+off), Q(k) = N(k+off) D(k+1+off), with common roots cancelled
        Pr = _count_add({}, {r - offset - 1: e for r, e in nr.items()})
        Pr = _count_add(Pr, {p - offset: e for p, e in dr.items()})
        Qr = _count_add({}, {r - offset: e for r, e in nr.items()})
        Qr = _count_add(Qr, {p - offset - 1: e for p, e in dr.items()})
        for r in list(Pr):
            if r in Qr:
                c = min(Pr[r], Qr[r])
                Pr[r] -= c
                Qr[r] -= c
        P = poly_from_roots({r: e for r, e in Pr.items() if e})
        Q = poly_from_roots({r: e for r, e in Qr.items() if e})
        poles = set(dr)
    else:
        raise TypeError("R must be a FactoredRationalFunction or PartialFractionExpansion")
    z = -1 if alternating else 1
    sgn = lambda nu: -1 if (alternating and nu % 2) else 1
    # terms must be nonzero past the last real root/pole so that the ratio recursion is valid
    crit = _real_points(R)
    first_ok = start
    for x in crit:
        first_ok = max(first_ok, math.floor(x - offset) + 1)
    vals = {}

    def term(k):
        if k not in vals:
            vals[k] = sgn(start + k) * f(start + k + offset)
        return vals[k]

    shift = start  # summation index k corresponds to nu = start + k
    Pk_ = poly_shift(P, shift)
    Qk_ = poly_shift(Q, shift)
    partial = {0: Fraction(0)}

    def head(K):
        # exact sum of terms k < K and the term t_K
        last = max(partial)
        s = partial[last]
        for k in range(last, K):
            s += term(k)
            partial[k + 1] = s
        return partial[K], term(K)

    min_K = max(0, first_ok - start)
    head_sum, tail = _sum_with_tail(head, Pk_, Qk_, z, digits, min_K)
    return _ball(head_sum + tail.value, tail.error, digits)


def _ball(value: Fraction, err: Fraction, digits: int) -> BallReal:
    # round with enough bits that the absolute rounding error stays below 10**-digits
    return BallReal.from_fraction(value, err, digits + magnitude_digits(value)).with_digits(digits)


def _count_add(d: dict, e: dict) -> dict:
    d = dict(d)
    for k, v in e.items():
        d[k] = d.get(k, 0) + v
    return d


def _iroot_ceil(x: Fraction, k: int) -> int:
    """Smallest integer B >= 0 with B^k >= x."""
    if x <= 0:
        return 0
    B = max(1, int(float(x) ** (1.0 / k)) if x < 10 ** 300 else 1 << (x.numerator.bit_length() // k + 1))
    while Fraction(B) ** k < x:
        B += 1
    while B > 1 and Fraction(B - 1) ** k >= x:
        B -= 1
    return B


def _root_bound(poly: list) -> int:
    """Integer bound on |root| (Fujiwara): 2 max_k |a_(d-k)/a_d|^(1/k), last term halved."""
    d = len(poly) - 1
    lead = poly[-1]
    best = 0
    for k in range(1, d + 1):
        r = abs(poly[d - k] / lead)
        if k == d:
            r /= 2
        best = max(best, _iroot_ceil(r, k))
    return 2 * best


def _real_points(R) -> list:
    if isinstance(R, FactoredRationalFunction):
        return list(R.numerator) + list(R.denominator)
    # polynomial form: bound the real roots of numerator and denominator
    num, den = R.polynomials()
    out = []
    for poly in (num, den):
        if len(poly) > 1:
            b = _root_bound(poly)
            out += [b, -b]
    return out
