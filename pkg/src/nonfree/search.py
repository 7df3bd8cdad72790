"""Certified sweeps over length-5 tuples and accumulation reports.

Every record produced here carries a certificate that was verified by exact
evaluation before the record was created.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import format_rat, parse_rat
from .errors import InvariantViolation, NonFreeError
from .families import hpell_tuple, pell_tuple
from .halfrel import certify_half_relation, phr_poly
from .quintic import ConicPoint, ConicSpec, conic_for_slot, conic_points, limit_a1_a2, quintic_coeffs, rational_roots5

SCHEMA_VERSION = 1
RECORD_KEYS = ("v", "tuple", "q", "delta", "identity_verified", "nontrivial_verified", "distance")


@dataclass(frozen=True)
class Target:
    """Exact target, or a narrow rational bracket around an irrational one."""

    lo: Fraction
    hi: Fraction

    @classmethod
    def parse(cls, text: str) -> Target:
        parts = [p for p in text.split(",") if p.strip()]
        if len(parts) == 1:
            x = parse_rat(parts[0])
            return cls(x, x)
        if len(parts) == 2:
            lo, hi = sorted(parse_rat(p) for p in parts)
            return cls(lo, hi)
        raise NonFreeError(f"target must be one rational or two bracketing rationals: {text!r}")

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def distance(self, q: Fraction) -> Fraction:
        return abs(q - self.mid)


def format_decimal(x: Fraction, places: int = 12) -> str:
    """Round half away from zero to ``places`` decimals, without floats."""
    sign = "-" if x < 0 else ""
    scaled = abs(x) * 10**places
    n = int(scaled)
    if scaled - n >= Fraction(1, 2):
        n += 1
    whole, frac = divmod(n, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


@dataclass(frozen=True)
class FoundRecord:
    tuple: tuple[int, ...]
    q: Fraction
    delta: int | None
    identity_verified: bool
    nontrivial_verified: bool
    distance: Fraction | None = None

    def to_json(self) -> dict:
        return {
            "v": SCHEMA_VERSION,
            "tuple": list(self.tuple),
            "q": format_rat(self.q),
            "delta": self.delta,
            "identity_verified": self.identity_verified,
            "nontrivial_verified": self.nontrivial_verified,
            "distance": None if self.distance is None else format_decimal(self.distance),
        }

    def with_target(self, target: Target | None) -> FoundRecord:
        if target is None:
            return self
        return FoundRecord(
            self.tuple, self.q, self.delta, self.identity_verified,
            self.nontrivial_verified, target.distance(self.q),
        )


def certified_record(t: Sequence[int], q: Fraction, delta: int | None = None) -> FoundRecord:
    cert = certify_half_relation(t, q)
    if delta is None:
        p = phr_poly(t)
        if p.degree == 2:
            delta = p.coeff(1) ** 2 - 4 * p.coeff(0) * p.coeff(2)
    return FoundRecord(tuple(cert.tuple), cert.q, delta, cert.verified_identity, cert.verified_nontrivial)


def _records_at(conic: ConicSpec, point: ConicPoint) -> list[FoundRecord]:
    if point.x == 0:
        return []
    t = conic.tuple_at(point.x)
    delta = quintic_coeffs(t).discriminant()
    if delta != point.y * point.y:
        raise InvariantViolation(f"conic and discriminant disagree at {t}")
    return [certified_record(t, q, delta) for q in rational_roots5(t) if q != 0]


def solve5(
    fixed: Sequence[int],
    slot: int = 1,
    xbound: int = 1000,
    orbit: int = 0,
    threads: int = 1,
    target: Target | None = None,
) -> list[FoundRecord]:
    """Certified rational roots for every integer point of the slot conic.

    Ordered by the swept entry, then by ``q``.
    """
    conic = conic_for_slot(fixed, slot)
    points = conic_points(conic, xbound, orbit, threads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda p: _records_at(conic, p), points))
    else:
        chunks = [_records_at(conic, p) for p in points]
    out = [r.with_target(target) for chunk in chunks for r in chunk]
    out.sort(key=lambda r: (r.tuple[slot - 1], r.q))
    return out


def parse_range(text: str, allow_zero: bool = False) -> list[int]:
    """``"1..4"``, ``"-3..3"``, ``"1,5,-2"`` or combinations thereof."""
    vals: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            a, b = part.split("..", 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise NonFreeError(f"empty range {part!r}")
            vals.extend(range(lo, hi + 1))
        else:
            vals.append(int(part))
    if not allow_zero:
        vals = [v for v in vals if v != 0]
    if not vals:
        raise NonFreeError(f"range {text!r} selects nothing")
    return list(dict.fromkeys(vals))


@dataclass
class SearchJob:
    ranges: list[list[int]] = field(default_factory=lambda: [[1], [1], [1], [1]])
    slot: int = 1
    xbound: int = 1000
    orbit: int = 0
    target: Target | None = None
    threads: int = 1
    fmt: str = "jsonl"

    def __post_init__(self):
        if len(self.ranges) != 4:
            raise NonFreeError("need ranges for the four fixed entries")
        if any(0 in r for r in self.ranges):
            raise NonFreeError("ranges must exclude 0")
        if self.xbound < 0 or self.orbit < 0:
            raise NonFreeError("bounds must be nonnegative")


def sweep(job: SearchJob) -> list[FoundRecord]:
    """All certified records over the product of the job's ranges, deduplicated."""
    seen: dict[tuple, FoundRecord] = {}
    for fixed in itertools.product(*job.ranges):
        for rec in solve5(fixed, job.slot, job.xbound, job.orbit, job.threads, job.target):
            seen.setdefault((rec.tuple, rec.q), rec)
    return list(seen.values())


def family_records(kind: str, ns: Iterable[int], target: Target | None = None) -> list[FoundRecord]:
    gen = {"pell": pell_tuple, "hpell": hpell_tuple}[kind]
    out = []
    for n in ns:
        q, t = gen(n)
        out.append(certified_record(t, q).with_target(target))
    return out


def rank_by_distance(records: Iterable[FoundRecord], target: Target) -> list[FoundRecord]:
    recs = [r.with_target(target) for r in records]
    recs.sort(key=lambda r: (r.distance, r.q, r.tuple))
    return recs


def hunt(job: SearchJob, top: int | None = None) -> list[FoundRecord]:
    if job.target is None:
        raise NonFreeError("hunt needs a target")
    ranked = rank_by_distance(sweep(job), job.target)
    return ranked if top is None else ranked[:top]


# -- output -------------------------------------------------------------------


def to_jsonl(records: Iterable[FoundRecord]) -> str:
    return "".join(json.dumps(r.to_json()) + "\n" for r in records)


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def to_csv(records: Iterable[FoundRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RECORD_KEYS)
    for r in records:
        d = r.to_json()
        d["tuple"] = " ".join(str(a) for a in r.tuple)
        w.writerow([_csv_cell(d[k]) for k in RECORD_KEYS])
    return buf.getvalue()


def render(records: Iterable[FoundRecord], fmt: str) -> str:
    if fmt == "jsonl":
        return to_jsonl(records)
    if fmt == "csv":
        return to_csv(records)
    raise NonFreeError(f"unknown format {fmt!r}")


def reverify_jsonl(text: str) -> list[bool]:
    """Recompute each record's certificate from its tuple and q alone.

    True for a line when the fresh verdicts match the stored ones and both
    hold.
    """
    verdicts = []
    for line in text.splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        try:
            cert = certify_half_relation(obj["tuple"], Fraction(obj["q"]))
            fresh = (cert.verified_identity, cert.verified_nontrivial)
        except (NonFreeError, InvariantViolation):
            fresh = (False, False)
        stored = (obj["identity_verified"], obj["nontrivial_verified"])
        verdicts.append(fresh == stored == (True, True))
    return verdicts


def approach_profile(
    triple: Sequence[int], bounds: Sequence[int], xbound: int = 200, orbit: int = 2
) -> tuple[Fraction, list[Fraction | None]]:
    """Nearest verified root to the double limit of ``(a3, a4, a5)``, per sweep bound.

    For each bound ``B`` the sweep covers every ``0 < |a2| <= B`` (slot-1
    conics).  Roots equal to the limit itself are skipped so the distances
    measure a non-constant sequence.  Sweeps are nested, so the returned
    distances never increase.
    """
    a3, a4, a5 = triple
    target = limit_a1_a2(a3, a4, a5, "-")
    best: Fraction | None = None
    done: set[int] = set()
    out: list[Fraction | None] = []
    for b in sorted(bounds):
        for a2 in range(-b, b + 1):
            if a2 == 0 or a2 in done:
                continue
            done.add(a2)
            for rec in solve5((a2, a3, a4, a5), 1, xbound, orbit):
                d = abs(rec.q - target)
                if d and (best is None or d < best):
                    best = d
        out.append(best)
    return target, out
