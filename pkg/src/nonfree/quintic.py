"""Length-5 half-relations: the quadratic in q, its discriminant as a conic in
one tuple entry, integer points on that conic, and the iterated limits of the
roots.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateQuadratic,
    NonFreeError,
    SquareInputError,
    WrongLengthError,
    ZeroArgError,
    ZeroDenominator,
)
from .halfrel import as_tuple, phr_poly
from .roots import integer_sqrt, is_square, largest_real_root, sqrt_bracket


@dataclass(frozen=True)
class QuinticCoeffs:
    c2: int
    c1: int
    c0: int
    tuple: tuple[int, ...]

    def discriminant(self) -> int:
        return self.c1 * self.c1 - 4 * self.c0 * self.c2


def _coeffs_raw(a1, a2, a3, a4, a5) -> tuple[int, int, int]:
    c2 = a1 * a2 * a3 * a4 * a5
    c1 = a1 * a2 * a3 - a2 * a3 * a4 + a1 * a2 * a5 + a1 * a4 * a5 + a3 * a4 * a5
    c0 = a1 - a2 + a3 - a4 + a5
    return c2, c1, c0


def quintic_coeffs(t: Sequence[int]) -> QuinticCoeffs:
    t = as_tuple(t)
    if len(t) != 5:
        raise WrongLengthError(f"expected a length-5 tuple, got {len(t)}")
    return QuinticCoeffs(*_coeffs_raw(*t), tuple=t)


# -- the discriminant conic ----------------------------------------------------


class AlphaClass(str, Enum):
    ZERO = "Zero"
    POSITIVE_SQUARE = "PositiveSquare"
    POSITIVE_NONSQUARE = "PositiveNonsquare"
    NEGATIVE = "Negative"


@dataclass(frozen=True)
class ConicSpec:
    """``alpha x^2 + beta x + gamma = y^2`` with ``x`` the entry at ``slot``.

    ``source`` is the full 5-tuple with ``None`` at the variable slot.
    """

    alpha: int
    beta: int
    gamma: int
    source: tuple[int | None, ...]
    slot: int = 1

    def delta(self, x: int) -> int:
        return (self.alpha * x + self.beta) * x + self.gamma

    def tuple_at(self, x: int) -> tuple[int, ...]:
        return tuple(x if a is None else a for a in self.source)

    def on_curve(self, x: int, y: int) -> bool:
        return self.delta(x) == y * y


@dataclass(frozen=True, order=True)
class ConicPoint:
    x: int
    y: int


def conic_from(a2: int, a3: int, a4: int, a5: int) -> ConicSpec:
    """Discriminant of the length-5 quadratic as a conic in ``a1``."""
    if 0 in (a2, a3, a4, a5):
        raise ZeroArgError("a2..a5 must be nonzero")
    alpha = (
        (a2 * a3) ** 2 + (a2 * a5) ** 2 + (a4 * a5) ** 2
        + 2 * a2 * a4 * a5**2 + 2 * a2**2 * a3 * a5 - 2 * a2 * a3 * a4 * a5
    )
    beta = (
        2 * (a2 * a3 + a2 * a5 + a4 * a5) * (a3 * a4 * a5 - a2 * a3 * a4)
        - 4 * a2 * a3 * a4 * a5 * (-a2 + a3 - a4 + a5)
    )
    gamma = (a3 * a4 * (a5 - a2)) ** 2
    return ConicSpec(alpha, beta, gamma, (None, a2, a3, a4, a5), 1)


def conic_for_slot(fixed: Sequence[int], slot: int) -> ConicSpec:
    """Conic in the entry at ``slot`` (1-based) with the other four entries fixed.

    Every coefficient of the quadratic is affine in any single entry, so the
    discriminant is a quadratic in that entry.
    """
    fixed = tuple(int(a) for a in fixed)
    if len(fixed) != 4:
        raise WrongLengthError("need exactly four fixed entries")
    if 0 in fixed:
        raise ZeroArgError("fixed entries must be nonzero")
    if not 1 <= slot <= 5:
        raise NonFreeError("slot must be in 1..5")
    source = fixed[: slot - 1] + (None,) + fixed[slot - 1 :]

    def at(x):
        return _coeffs_raw(*(x if a is None else a for a in source))

    m2, m1, m0 = at(0)
    s2, s1, s0 = at(1)
    l2, l1, l0 = s2 - m2, s1 - m1, s0 - m0
    alpha = l1 * l1 - 4 * l0 * l2
    beta = 2 * l1 * m1 - 4 * (l0 * m2 + m0 * l2)
    gamma = m1 * m1 - 4 * m0 * m2
    return ConicSpec(alpha, beta, gamma, source, slot)


def classify_alpha(c: ConicSpec) -> AlphaClass:
    if c.alpha == 0:
        return AlphaClass.ZERO
    if c.alpha < 0:
        return AlphaClass.NEGATIVE
    return AlphaClass.POSITIVE_SQUARE if is_square(c.alpha) else AlphaClass.POSITIVE_NONSQUARE


def base_point(c: ConicSpec) -> ConicPoint | None:
    """Non-singular integer point above ``x = 0``, when ``gamma`` is a nonzero square."""
    if c.gamma <= 0:
        return None
    r, exact = integer_sqrt(c.gamma)
    return ConicPoint(0, r) if exact else None


def pell_fundamental(d: int) -> tuple[int, int]:
    """Minimal ``(t, u)`` with ``t^2 - d u^2 = 1``, from the continued fraction of sqrt(d)."""
    if d <= 0 or is_square(d):
        raise SquareInputError(f"d must be a positive nonsquare, got {d}")
    a0 = math.isqrt(d)
    m, den, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while h * h - d * k * k != 1:
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return h, k


def _scan_chunk(c: ConicSpec, lo: int, hi: int) -> list[ConicPoint]:
    out = []
    for x in range(lo, hi + 1):
        d = c.delta(x)
        if d >= 0:
            r = math.isqrt(d)
            if r * r == d:
                out.append(ConicPoint(x, r))
    return out


def scan_points(c: ConicSpec, x_abs_bound: int, threads: int = 1) -> list[ConicPoint]:
    """Every integer point with ``|x| <= x_abs_bound``, sorted by ``x``."""
    lo, hi = -x_abs_bound, x_abs_bound
    if threads <= 1 or hi - lo < 1000:
        return _scan_chunk(c, lo, hi)
    n = hi - lo + 1
    step = -(-n // threads)
    bounds = [(lo + i * step, min(hi, lo + (i + 1) * step - 1)) for i in range(threads) if lo + i * step <= hi]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda b: _scan_chunk(c, *b), bounds))
    return [p for part in parts for p in part]


def orbit_points(c: ConicSpec, seed: ConicPoint, steps: int) -> list[ConicPoint]:
    """Integer points reached from ``seed`` by at most ``steps`` applications
    of the unit automorphism in either direction.

    Works on ``u = 2 alpha x + beta``, ``v = 2 y``, which satisfy
    ``u^2 - alpha v^2 = beta^2 - 4 alpha gamma``.
    """
    if classify_alpha(c) is not AlphaClass.POSITIVE_NONSQUARE or steps <= 0:
        return []
    al = c.alpha
    t, s = pell_fundamental(al)
    u0, v0 = 2 * al * seed.x + c.beta, 2 * seed.y
    found = []
    for sign in (1, -1):
        u, v = u0, v0
        for _ in range(steps):
            u, v = t * u + sign * al * s * v, sign * s * u + t * v
            if (u - c.beta) % (2 * al) == 0 and v % 2 == 0:
                p = ConicPoint((u - c.beta) // (2 * al), abs(v) // 2)
                if not c.on_curve(p.x, p.y):
                    raise AssertionError(f"orbit point {p} is off the conic")
                found.append(p)
    return found


def conic_points(
    c: ConicSpec, x_abs_bound: int, orbit_steps: int = 0, threads: int = 1
) -> list[ConicPoint]:
    """Scan ``|x| <= x_abs_bound`` exhaustively, then extend by automorphism
    orbits (nonsquare positive ``alpha`` only).  Sorted by ``x``; one point
    per ``x`` with ``y >= 0``.
    """
    if x_abs_bound < 0 or orbit_steps < 0:
        raise NonFreeError("bounds must be nonnegative")
    pts = set(scan_points(c, x_abs_bound, threads))
    seeds = sorted(pts)
    bp = base_point(c)
    if bp is not None and bp not in pts:
        seeds.append(bp)
        pts.add(bp)
    if orbit_steps and classify_alpha(c) is AlphaClass.POSITIVE_NONSQUARE:
        for seed in seeds:
            pts.update(orbit_points(c, seed, orbit_steps))
    out = sorted(pts)
    for p in out:
        if not c.on_curve(p.x, p.y):
            raise AssertionError(f"{p} is off the conic")
    return out


# -- roots --------------------------------------------------------------------


def rational_roots5(t: Sequence[int]) -> list[Fraction]:
    """Rational roots of the length-5 half-relation quadratic, ascending."""
    co = quintic_coeffs(t)
    if co.c2 == 0:
        raise DegenerateQuadratic("leading coefficient vanishes")
    disc = co.discriminant()
    if disc < 0:
        return []
    r, exact = integer_sqrt(disc)
    if not exact:
        return []
    return sorted({Fraction(-co.c1 + r, 2 * co.c2), Fraction(-co.c1 - r, 2 * co.c2)})


# -- limits -------------------------------------------------------------------


def limit_a1(a2: int, a3: int, a4: int, a5: int, branch: str = "-", digits: int = 13) -> tuple[Fraction, Fraction]:
    """Rational bracket, width <= 10**-12, of the root limit as ``a1 -> oo``."""
    k = a2 * a3 * a4 * a5
    if k == 0:
        raise ZeroDenominator("a2 a3 a4 a5 must be nonzero")
    alpha = conic_from(a2, a3, a4, a5).alpha
    if alpha < 0:
        raise NonFreeError("the limiting roots are not real (alpha < 0)")
    b = a2 * a3 + a2 * a5 + a4 * a5
    lo, hi = sqrt_bracket(alpha, digits)
    sgn = 1 if branch == "+" else -1
    ends = sorted((Fraction(-b + sgn * lo, 2 * k), Fraction(-b + sgn * hi, 2 * k)))
    return ends[0], ends[1]


def limit_a1_a2(a3: int, a4: int, a5: int, branch: str = "-") -> Fraction:
    """Iterated limit ``a1 -> oo`` then ``a2 -> oo``; the ``+`` branch tends to 0."""
    if a3 * a4 * a5 == 0:
        raise ZeroDenominator("a3 a4 a5 must be nonzero")
    if branch == "+":
        return Fraction(0)
    return Fraction(-(a3 + a5), a3 * a4 * a5)


def limit_a1_a2_a3(a4: int, a5: int) -> Fraction:
    if a4 * a5 == 0:
        raise ZeroDenominator("a4 a5 must be nonzero")
    return Fraction(-1, a4 * a5)


def onestep_target_map(r: int, s: int, t: int) -> tuple[int, int, int]:
    """``(a3, a4, a5)`` whose double limit is the 1-step number ``(r+t)/(rst)``."""
    if 0 in (r, s, t):
        raise ZeroArgError("r, s, t must be nonzero")
    return r, -s, t


def septic_experiment(n: int, precision=Fraction(1, 10**12)) -> tuple[Fraction, Fraction]:
    """Isolating interval of the largest real root of P^7 at ``(1,-1,1,-1,1,n,n)``."""
    if n < 1:
        raise NonFreeError("N must be positive")
    root = largest_real_root(phr_poly((1, -1, 1, -1, 1, n, n)), precision)
    if root is None:
        raise AssertionError("odd-degree polynomial without a real root")
    return root
