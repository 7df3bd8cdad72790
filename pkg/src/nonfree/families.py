"""Explicit families of non-free rationals: partial sums of geometric series
and ratios of consecutive Pell / half-companion Pell numbers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BadDigit, BadParams, IndexTooSmall


def geom_block(k: int, s: int, t: int) -> tuple[Fraction, tuple[int, int, int]]:
    """``q = (k-1) * sum_{n=s}^{t} k^-n`` and its length-3 half-relation."""
    if not (k >= 2 and s >= 1 and t >= s):
        raise BadParams(f"need k >= 2, s >= 1, t >= s; got k={k}, s={s}, t={t}")
    q = Fraction(1, k ** (s - 1)) - Fraction(1, k**t)
    return q, (1, k ** (t - s) * (k**s + k), k ** (s - 1))


def geom_alternating(k: int, s: int, t: int) -> tuple[Fraction, tuple[int, int, int]]:
    """``q = (k-1) * sum_{n=0}^{t} k^-(s+2n)`` and its length-3 half-relation."""
    if not (k >= 2 and s >= 2 and t >= 1):
        raise BadParams(f"need k >= 2, s >= 2, t >= 1; got k={k}, s={s}, t={t}")
    q = (k - 1) * Fraction(1, k**s) * (k * k - Fraction(1, k ** (2 * t))) / (k * k - 1)
    head = k ** (s - 2)
    return q, (head, (head + k + 1) * k ** (2 * t + 2), k + 1)


def geom_series_sum(k: int, exponents) -> Fraction:
    """Direct ``(k-1) * sum k^-n`` over ``exponents``; used to cross-check the closed forms."""
    return (k - 1) * sum((Fraction(1, k**n) for n in exponents), Fraction(0))


@dataclass(frozen=True)
class PellState:
    n: int
    P: int
    H: int


@lru_cache(maxsize=None)
def _pell_pair(n: int) -> tuple[int, int]:
    # iterative to avoid deep recursion; cache keeps repeated lookups O(1)
    p0, p1, h0, h1 = 0, 1, 1, 1
    if n == 0:
        return p0, h0
    for _ in range(n - 1):
        p0, p1 = p1, 2 * p1 + p0
        h0, h1 = h1, 2 * h1 + h0
    return p1, h1


def pell_state(n: int) -> PellState:
    if n < 0:
        raise IndexTooSmall("index must be >= 0")
    p, h = _pell_pair(n)
    return PellState(n, p, h)


def pell_numbers(count: int) -> list[int]:
    return [pell_state(i).P for i in range(count)]


def half_pell_numbers(count: int) -> list[int]:
    return [pell_state(i).H for i in range(count)]


def _check_index(n: int) -> None:
    if n < 2:
        raise IndexTooSmall(f"n must be >= 2, got {n}")


def pell_tuple(n: int) -> tuple[Fraction, tuple[int, ...]]:
    """``q_n = P_{n+1}/P_n`` with the half-relation ``(1, x_n, 1, -1, 1, -1)``."""
    _check_index(n)
    p_prev, p, p_next = pell_state(n - 1).P, pell_state(n).P, pell_state(n + 1).P
    x = (-1) ** (n + 1) * 2 * p * p_prev
    return Fraction(p_next, p), (1, x, 1, -1, 1, -1)


def hpell_tuple(n: int) -> tuple[Fraction, tuple[int, ...]]:
    """``a_n = H_{n+1}/H_n`` with the half-relation ``(1, y_n, 1, -1, 1, -1)``."""
    _check_index(n)
    h_prev, h, h_next = pell_state(n - 1).H, pell_state(n).H, pell_state(n + 1).H
    y = (-1) ** n * h * h_prev
    return Fraction(h_next, h), (1, y, 1, -1, 1, -1)


def f_check(q, x: int) -> Fraction:
    q = Fraction(q)
    return q * q * x - 2 * q * x + 2 * q - x - 4


def base_k_parse(digits: str, k: int) -> Fraction:
    """Exact value of a fractional base-``k`` expansion such as ``"0.222"``."""
    if not 2 <= k <= 36:
        raise BadDigit(f"base must be in 2..36, got {k}")
    s = digits.strip().lower()
    if s.startswith("0."):
        frac = s[2:]
    elif s.startswith("."):
        frac = s[1:]
    else:
        raise BadDigit(f"expected a fractional expansion '0.ddd', got {digits!r}")
    total = Fraction(0)
    for i, ch in enumerate(frac, start=1):
        try:
            d = int(ch, 36)
        except ValueError as exc:
            raise BadDigit(f"bad digit {ch!r}") from exc
        if d >= k:
            raise BadDigit(f"digit {ch!r} is out of range for base {k}")
        total += Fraction(d, k**i)
    return total
