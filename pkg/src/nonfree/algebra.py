"""Exact arithmetic for the groups G_q = <A, B_q>.

Rationals are plain :class:`fractions.Fraction` values.  Polynomials in q
have integer coefficients and are stored densely in ascending order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import DivisibilityError, NonFreeError

Rat = Fraction


def parse_rat(text: str | int | Fraction) -> Fraction:
    """Parse ``"num/den"``, an integer, or a finite decimal string exactly."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = text.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise NonFreeError(f"not a rational number: {text!r}") from exc


def format_rat(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# -- polynomials --------------------------------------------------------------


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Immutable polynomial in q with integer coefficients (ascending)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = _trim(int(a) for a in coeffs)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def q(cls) -> IntPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @staticmethod
    def _lift(other: Any) -> IntPoly | None:
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly((other,))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return IntPoly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-a for a in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(other * a for a in self.coeffs)
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __call__(self, x: Fraction | int) -> Fraction:
        """Horner evaluation; exact for rational ``x``."""
        x = Fraction(x)
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def div_by_q(self) -> IntPoly:
        if self.coeff(0) != 0:
            raise DivisibilityError(f"{self} has nonzero constant term")
        return IntPoly(self.coeffs[1:])

    def derivative(self) -> IntPoly:
        return IntPoly(i * a for i, a in enumerate(self.coeffs) if i)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if a == 0:
                continue
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                mono = "q" if i == 1 else f"q^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not parts:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(("+ " if a > 0 else "- ") + body)
        return " ".join(parts)


# -- 2x2 matrices -------------------------------------------------------------


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over any commutative ring supporting ``+``, ``-``, ``*``."""

    c11: Any
    c12: Any
    c21: Any
    c22: Any

    @classmethod
    def identity(cls, one: Any = 1, zero: Any = 0) -> Mat2:
        return cls(one, zero, zero, one)

    def __matmul__(self, o: Mat2) -> Mat2:
        return Mat2(
            self.c11 * o.c11 + self.c12 * o.c21,
            self.c11 * o.c12 + self.c12 * o.c22,
            self.c21 * o.c11 + self.c22 * o.c21,
            self.c21 * o.c12 + self.c22 * o.c22,
        )

    def det(self):
        return self.c11 * self.c22 - self.c12 * self.c21

    def is_identity(self) -> bool:
        return self.c11 == 1 and self.c12 == 0 and self.c21 == 0 and self.c22 == 1

    def is_upper_triangular(self) -> bool:
        return self.c21 == 0

    def map(self, f) -> Mat2:
        return Mat2(f(self.c11), f(self.c12), f(self.c21), f(self.c22))

    def rows(self) -> tuple[tuple[Any, Any], tuple[Any, Any]]:
        return ((self.c11, self.c12), (self.c21, self.c22))


# -- words in the free group on a, b -----------------------------------------

Syllable = tuple[str, int]
GENERATORS = ("a", "b")


@dataclass(frozen=True)
class Word:
    """Freely reduced word; build through :func:`free_reduce` or :meth:`of`."""

    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        prev = None
        for g, e in self.syllables:
            if g not in GENERATORS:
                raise NonFreeError(f"unknown generator {g!r}")
            if e == 0 or g == prev:
                raise NonFreeError(f"not freely reduced: {self.syllables}")
            prev = g

    @classmethod
    def of(cls, syllables: Iterable[Sequence]) -> Word:
        return free_reduce(syllables)

    def __len__(self) -> int:
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def inverse(self) -> Word:
        return word_inverse(self)

    def __mul__(self, other: Word) -> Word:
        return word_concat(self, other)

    def letter_length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def to_json(self) -> list[list]:
        return [[g, e] for g, e in self.syllables]

    def __str__(self):
        if not self.syllables:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.syllables)


def free_reduce(syllables: Iterable[Sequence]) -> Word:
    stack: list[list] = []
    for g, e in syllables:
        e = int(e)
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return Word(tuple((g, e) for g, e in stack))


def word_inverse(w: Word) -> Word:
    return Word(tuple((g, -e) for g, e in reversed(w.syllables)))


def word_concat(u: Word, v: Word) -> Word:
    return free_reduce(u.syllables + v.syllables)


def commutator(u: Word, v: Word) -> Word:
    """[u, v] = u v u^-1 v^-1."""
    return free_reduce(u.syllables + v.syllables + u.inverse().syllables + v.inverse().syllables)


def gen_power(g: str, n: int, q: Fraction) -> Mat2:
    # closed forms: A^n = [[1, n], [0, 1]], B_q^n = [[1, 0], [n q, 1]]
    if g == "a":
        return Mat2(Fraction(1), Fraction(n), Fraction(0), Fraction(1))
    return Mat2(Fraction(1), Fraction(0), n * q, Fraction(1))


def eval_word(w: Word, q: Fraction | int) -> Mat2:
    """Evaluate ``w`` at ``a -> A``, ``b -> B_q`` exactly."""
    q = Fraction(q)
    m = Mat2.identity(Fraction(1), Fraction(0))
    for g, e in w.syllables:
        m = m @ gen_power(g, e, q)
    return m


def eval_word_symbolic(w: Word) -> Mat2:
    one, zero = IntPoly.const(1), IntPoly()
    m = Mat2.identity(one, zero)
    for g, e in w.syllables:
        if g == "a":
            m = m @ Mat2(one, IntPoly.const(e), zero, one)
        else:
            m = m @ Mat2(one, zero, IntPoly((0, e)), one)
    return m
