"""Integer square roots and exact real-root isolation.

Root isolation works over the rationals only: Sturm sequences for counting,
bisection for refinement, a Cauchy bound for the starting interval.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .algebra import IntPoly
from .errors import NonFreeError

QPoly = list[Fraction]  # ascending, trimmed


def integer_sqrt(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), n is a perfect square)``."""
    if n < 0:
        raise NonFreeError("integer_sqrt of a negative number")
    r = math.isqrt(n)
    return r, r * r == n


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _q(p: IntPoly | Sequence) -> QPoly:
    coeffs = p.coeffs if isinstance(p, IntPoly) else p
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _eval(p: QPoly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def _rem(f: QPoly, g: QPoly) -> QPoly:
    r = list(f)
    dg, lg = len(g) - 1, g[-1]
    while len(r) - 1 >= dg and r:
        k = r[-1] / lg
        shift = len(r) - 1 - dg
        for i, c in enumerate(g):
            r[shift + i] -= k * c
        r.pop()
        while r and r[-1] == 0:
            r.pop()
    return r


def _gcd(f: QPoly, g: QPoly) -> QPoly:
    while g:
        f, g = g, _rem(f, g)
    return [c / f[-1] for c in f]


def _quo(f: QPoly, g: QPoly) -> QPoly:
    r = list(f)
    dg, lg = len(g) - 1, g[-1]
    out = [Fraction(0)] * (len(f) - dg)
    while r and len(r) - 1 >= dg:
        k = r[-1] / lg
        shift = len(r) - 1 - dg
        out[shift] = k
        for i, c in enumerate(g):
            r[shift + i] -= k * c
        r.pop()
    return out


def _deriv(p: QPoly) -> QPoly:
    return [i * a for i, a in enumerate(p)][1:]


def squarefree_part(p: IntPoly | Sequence) -> QPoly:
    f = _q(p)
    d = _deriv(f)
    if not d:
        return f
    return _quo(f, _gcd(f, d))


def sturm_sequence(p: IntPoly | Sequence) -> list[QPoly]:
    f = squarefree_part(p)
    seq = [f, _deriv(f)]
    while seq[-1]:
        seq.append([-c for c in _rem(seq[-2], seq[-1])])
    return seq[:-1]


def _variations(seq: list[QPoly], x: Fraction) -> int:
    signs = [v for v in (_eval(s, x) for s in seq) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def count_roots(seq: list[QPoly], lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in ``(lo, hi]`` of the squarefree head of ``seq``."""
    return _variations(seq, lo) - _variations(seq, hi)


def cauchy_bound(p: IntPoly | Sequence) -> Fraction:
    f = _q(p)
    lead = abs(f[-1])
    return 1 + max((abs(c) / lead for c in f[:-1]), default=Fraction(0))


def real_roots(p: IntPoly, precision: Fraction | int | float | str) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals ``(lo, hi)`` for every real root of ``p``, ascending.

    Each interval has rational endpoints that are not roots, contains exactly
    one distinct real root, and has width at most ``precision``.
    """
    precision = Fraction(precision)
    if precision <= 0:
        raise NonFreeError("precision must be positive")
    if isinstance(p, IntPoly) and p.is_zero():
        raise NonFreeError("the zero polynomial has no isolated roots")
    f = squarefree_part(p)
    if len(f) <= 1:
        return []
    seq = sturm_sequence(p)
    bound = cauchy_bound(f)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, count_roots(seq, -bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(_refine(f, lo, hi, precision))
            continue
        mid = _split_point(f, lo, hi)
        left = count_roots(seq, lo, mid)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort()
    return out


def _split_point(f: QPoly, lo: Fraction, hi: Fraction) -> Fraction:
    # midpoint, nudged off any exact root so endpoints stay root-free
    k = 2
    while True:
        mid = lo + (hi - lo) / k if k > 2 else (lo + hi) / 2
        if _eval(f, mid) != 0:
            return mid
        k += 1


def _refine(f: QPoly, lo: Fraction, hi: Fraction, precision: Fraction) -> tuple[Fraction, Fraction]:
    slo = _eval(f, lo) > 0
    while hi - lo > precision:
        mid = _split_point(f, lo, hi)
        if (_eval(f, mid) > 0) == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def largest_real_root(p: IntPoly, precision) -> tuple[Fraction, Fraction] | None:
    roots = real_roots(p, precision)
    return roots[-1] if roots else None


def sqrt_bracket(n: int | Fraction, digits: int) -> tuple[Fraction, Fraction]:
    """Rational ``(lo, hi)`` with ``lo <= sqrt(n) <= hi`` and ``hi - lo <= 10**-digits``."""
    n = Fraction(n)
    if n < 0:
        raise NonFreeError("square root of a negative number")
    scale = 10**digits
    # floor(sqrt(n) * scale) from integer arithmetic
    r = math.isqrt(n.numerator * scale * scale // n.denominator)
    lo = Fraction(r, scale)
    hi = lo if lo * lo == n else Fraction(r + 1, scale)
    return lo, hi
