"""Half-relation polynomials, relator certificates and 1-step relation numbers."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import IntPoly, Word, commutator, eval_word, eval_word_symbolic, format_rat, free_reduce
from .errors import CertificateFailure, NonFreeError, NotAHalfRelation, ZeroArgError, ZeroQError

HALF_RELATION = "half-relation"
ONE_STEP = "one-step"


def as_tuple(entries: Iterable[int]) -> tuple[int, ...]:
    """Validate a half-relation tuple: nonempty, all entries nonzero integers."""
    t = tuple(int(a) for a in entries)
    if not t:
        raise NonFreeError("tuple must have at least one entry")
    if any(a == 0 for a in t):
        raise ZeroArgError(f"tuple entries must be nonzero: {t}")
    return t


def alt_word(t: Sequence[int]) -> Word:
    t = as_tuple(t)
    return Word(tuple(("a" if i % 2 == 0 else "b", e) for i, e in enumerate(t)))


def mirror_word(t: Sequence[int]) -> Word:
    """Reverse the syllables of :func:`alt_word` and swap ``a <-> b``."""
    t = as_tuple(t)
    return Word(tuple(("b" if i % 2 == 0 else "a", e) for i, e in enumerate(reversed(t))))


def phr_poly(t: Sequence[int]) -> IntPoly:
    """Integer polynomial in q vanishing exactly at the q making ``t`` a half-relation.

    Odd length: ``(q*c12 - c21) / q``.  Even length: ``(c11 - c22) / q``.
    """
    t = as_tuple(t)
    m = eval_word_symbolic(alt_word(t))
    if len(t) % 2:
        raw = IntPoly.q() * m.c12 - m.c21
    else:
        raw = m.c11 - m.c22
    return raw.div_by_q()


def _check_q(q) -> Fraction:
    q = Fraction(q)
    if q == 0:
        raise ZeroQError("q must be nonzero")
    return q


def is_half_relation(t: Sequence[int], q) -> bool:
    q = _check_q(q)
    return phr_poly(t)(q) == 0


def raw_half_relation_condition(t: Sequence[int], q) -> bool:
    """The symmetry condition tested directly on the evaluated matrix."""
    t = as_tuple(t)
    q = Fraction(q)
    m = eval_word(alt_word(t), q)
    if len(t) % 2:
        return q * m.c12 == m.c21
    return m.c11 == m.c22


@dataclass(frozen=True)
class Certificate:
    tuple: tuple[int, ...]
    q: Fraction
    relator: Word
    kind: str
    verified_identity: bool
    verified_nontrivial: bool

    @property
    def valid(self) -> bool:
        return self.verified_identity and self.verified_nontrivial

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "tuple": list(self.tuple),
            "q": format_rat(self.q),
            "relator": self.relator.to_json(),
            "identity_verified": self.verified_identity,
            "nontrivial_verified": self.verified_nontrivial,
        }

    @classmethod
    def from_json(cls, obj: dict) -> Certificate:
        return cls(
            tuple=tuple(obj["tuple"]),
            q=Fraction(obj["q"]),
            relator=free_reduce(obj["relator"]),
            kind=obj["kind"],
            verified_identity=bool(obj["identity_verified"]),
            verified_nontrivial=bool(obj["nontrivial_verified"]),
        )

    def recheck(self) -> bool:
        """Re-verify the relator from scratch, ignoring the stored flags."""
        return verify_relator(self.relator, self.q) == (True, True)


def verify_relator(relator: Word, q) -> tuple[bool, bool]:
    reduced = free_reduce(relator.syllables)
    return eval_word(reduced, q).is_identity(), not reduced.is_identity()


def certify_half_relation(t: Sequence[int], q) -> Certificate:
    t = as_tuple(t)
    q = _check_q(q)
    if not is_half_relation(t, q):
        raise NotAHalfRelation(f"{t} is not a half-relation for q = {format_rat(q)}")
    relator = alt_word(t) * mirror_word(t).inverse()
    ident, nontrivial = verify_relator(relator, q)
    cert = Certificate(t, q, relator, HALF_RELATION, ident, nontrivial)
    if not cert.valid:
        raise CertificateFailure(f"relator for {t} at q = {format_rat(q)} failed verification")
    return cert


# -- 1-step relation numbers --------------------------------------------------


def _nonzero(*args: int) -> None:
    if any(a == 0 for a in args):
        raise ZeroArgError(f"arguments must be nonzero: {args}")


def onestep_q(r: int, s: int, t: int) -> Fraction:
    _nonzero(r, s, t)
    return Fraction(r + t, r * s * t)


def onestep_word(r: int, s: int, t: int) -> Word:
    _nonzero(r, s, t)
    return Word((("b", r), ("a", -s), ("b", t)))


def is_onestep_upper_triangular(r: int, s: int, t: int, q) -> bool:
    return eval_word(onestep_word(r, s, t), q).is_upper_triangular()


def onestep_matrix_closed_form(r: int, s: int, t: int, q) -> tuple[tuple, tuple]:
    q = Fraction(q)
    return ((-s * t * q + 1, Fraction(-s)), (-r * s * t * q * q + (r + t) * q, -r * s * q + 1))


def _sign_patterns():
    # + before -, most significant sign first
    return itertools.product((1, -1), repeat=3)


def onestep_search(q, bound: int) -> tuple[int, int, int] | None:
    """Smallest ``(r, s, t)`` with ``|r|, |s|, |t| <= bound`` and ``(r+t)/(rst) = q``.

    Order is lexicographic on ``(|r|, |s|, |t|)``, then on the sign pattern
    with ``+`` before ``-``.
    """
    q = _check_q(q)
    if bound < 1:
        raise NonFreeError("bound must be >= 1")
    for ar in range(1, bound + 1):
        for as_ in range(1, bound + 1):
            for at in range(1, bound + 1):
                for sr, ss, st in _sign_patterns():
                    r, s, t = sr * ar, ss * as_, st * at
                    if r + t != 0 and Fraction(r + t, r * s * t) == q:
                        return r, s, t
    return None


def onestep_certificate(r: int, s: int, t: int) -> Certificate:
    q = onestep_q(r, s, t)
    if q == 0:
        raise ZeroArgError("r + t must be nonzero")
    w = onestep_word(r, s, t)
    a = Word((("a", 1),))
    relator = commutator(w * a * w.inverse(), a)
    ident, nontrivial = verify_relator(relator, q)
    cert = Certificate((r, s, t), q, relator, ONE_STEP, ident, nontrivial)
    if not cert.valid:
        raise CertificateFailure(f"1-step relator for {(r, s, t)} failed verification")
    return cert

