"""``nonfree`` command line.

Exit codes: 0 success / verified, 1 checked and false, 2 usage error,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import families as fam
from .algebra import format_rat, parse_rat
from .errors import InvariantViolation, NonFreeError, NotAHalfRelation
from .halfrel import (
    certify_half_relation,
    is_half_relation,
    onestep_certificate,
    onestep_q,
    onestep_search,
    phr_poly,
)
from .quintic import (
    classify_alpha,
    conic_for_slot,
    limit_a1,
    limit_a1_a2,
    limit_a1_a2_a3,
    septic_experiment,
)
from .search import (
    SearchJob,
    Target,
    certified_record,
    family_records,
    format_decimal,
    hunt,
    parse_range,
    rank_by_distance,
    render,
    reverify_jsonl,
    solve5,
)

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _ints(values) -> list[int]:
    return [int(v) for v in values]


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_phr(args) -> int:
    p = phr_poly(_ints(args.tuple))
    print(str(p))
    print(json.dumps(list(p.coeffs)))
    return EXIT_OK


def cmd_check(args) -> int:
    ok = is_half_relation(_ints(args.tuple), parse_rat(args.q))
    print("true" if ok else "false")
    return EXIT_OK if ok else EXIT_FALSE


def cmd_certify(args) -> int:
    try:
        cert = certify_half_relation(_ints(args.tuple), parse_rat(args.q))
    except NotAHalfRelation as exc:
        print(f"not a half-relation: {exc}", file=sys.stderr)
        return EXIT_FALSE
    print(json.dumps(cert.to_json()))
    return EXIT_OK


def cmd_onestep(args) -> int:
    if args.q is not None:
        if args.rst:
            raise UsageError("give either --q or r s t, not both")
        found = onestep_search(parse_rat(args.q), args.bound)
        if found is None:
            print("none")
            return EXIT_FALSE
        r, s, t = found
    else:
        if len(args.rst) != 3:
            raise UsageError("onestep needs exactly three integers r s t, or --q")
        r, s, t = _ints(args.rst)
    cert = onestep_certificate(r, s, t)
    print(json.dumps({"r": r, "s": s, "t": t, **cert.to_json()}))
    return EXIT_OK


def _target(args) -> Target | None:
    return Target.parse(args.target) if args.target else None


def cmd_solve5(args) -> int:
    fixed = _ints(args.fixed)
    if len(fixed) != 4:
        raise UsageError("solve5 needs the four fixed entries")
    recs = solve5(fixed, args.slot, args.xbound, args.orbit, args.threads, _target(args))
    if args.verbose:
        c = conic_for_slot(fixed, args.slot)
        print(
            f"# conic alpha={c.alpha} beta={c.beta} gamma={c.gamma} class={classify_alpha(c).value}",
            file=sys.stderr,
        )
    _emit(render(recs, args.format), args.out)
    return EXIT_OK


def _table(rows: list[tuple]) -> str:
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    return "".join("  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip() + "\n" for r in rows)


def cmd_families(args) -> int:
    rows: list[tuple] = [("params", "q", "tuple", "verified")]
    if args.variant in ("pell", "hpell"):
        if args.n is None:
            raise UsageError("pell families need --n")
        gen = fam.pell_tuple if args.variant == "pell" else fam.hpell_tuple
        for n in parse_range(args.n):
            q, t = gen(n)
            cert = certify_half_relation(t, q)
            rows.append((f"n={n}", format_rat(q), " ".join(map(str, t)), str(cert.valid).lower()))
    else:
        if None in (args.k, args.s, args.t):
            raise UsageError("geometric families need --k, --s and --t")
        gen = fam.geom_block if args.variant == "block" else fam.geom_alternating
        for k in parse_range(args.k):
            for s in parse_range(args.s):
                for t_ in parse_range(args.t):
                    q, t = gen(k, s, t_)
                    cert = certify_half_relation(t, q)
                    rows.append((f"k={k} s={s} t={t_}", format_rat(q), " ".join(map(str, t)), str(cert.valid).lower()))
    sys.stdout.write(_table(rows))
    return EXIT_OK


def cmd_limits(args) -> int:
    a3, a4, a5 = _ints(args.triple)
    print(f"-(a3+a5)/(a3 a4 a5) = {format_rat(limit_a1_a2(a3, a4, a5, '-'))}")
    print(f"-1/(a4 a5) = {format_rat(limit_a1_a2_a3(a4, a5))}")
    if args.a2 is not None:
        for branch in ("-", "+"):
            lo, hi = limit_a1(args.a2, a3, a4, a5, branch)
            print(f"lim a1->oo q{branch} in [{format_decimal(lo, 13)}, {format_decimal(hi, 13)}]")
    return EXIT_OK


def cmd_septic(args) -> int:
    lo, hi = septic_experiment(args.N, parse_rat(args.precision))
    print(json.dumps({
        "N": args.N,
        "lo": format_rat(lo),
        "hi": format_rat(hi),
        "approx": format_decimal((lo + hi) / 2, 15),
        "distance_to_3": format_decimal(abs((lo + hi) / 2 - 3), 15),
    }))
    return EXIT_OK


def cmd_hunt(args) -> int:
    target = _target(args)
    if target is None:
        raise UsageError("hunt needs --target")
    if args.source in ("pell", "hpell"):
        if args.n is None:
            raise UsageError("pell sources need --n")
        recs = rank_by_distance(family_records(args.source, parse_range(args.n)), target)
        if args.top:
            recs = recs[: args.top]
    else:
        job = SearchJob(
            ranges=[parse_range(r) for r in (args.f1, args.f2, args.f3, args.f4)],
            slot=args.slot,
            xbound=args.xbound,
            orbit=args.orbit,
            target=target,
            threads=args.threads,
            fmt=args.format,
        )
        recs = hunt(job, args.top)
    _emit(render(recs, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    with open(args.path, encoding="utf-8") as fh:
        verdicts = reverify_jsonl(fh.read())
    bad = [i for i, ok in enumerate(verdicts, 1) if not ok]
    print(f"{len(verdicts) - len(bad)}/{len(verdicts)} records re-verified")
    for i in bad:
        print(f"line {i}: FAILED")
    return EXIT_OK if not bad else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonfree", description="Certify non-free rationals q for <A, B_q>.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phr", help="print the half-relation polynomial of a tuple")
    p.add_argument("tuple", nargs="+")
    p.set_defaults(func=cmd_phr)

    for name, func in (("check", cmd_check), ("certify", cmd_certify)):
        p = sub.add_parser(name, help=f"{name} a tuple as a half-relation for q")
        p.add_argument("tuple", nargs="+")
        p.add_argument("--q", required=True, help="rational NUM/DEN")
        p.set_defaults(func=func)

    p = sub.add_parser("onestep", help="1-step relation numbers: certify r s t, or search for --q")
    p.add_argument("rst", nargs="*")
    p.add_argument("--q")
    p.add_argument("--bound", type=int, default=10)
    p.set_defaults(func=cmd_onestep)

    def sweep_flags(p, with_threads=True):
        p.add_argument("--slot", type=int, default=1, help="tuple index (1..5) swept as the conic variable")
        p.add_argument("--xbound", type=int, default=1000)
        p.add_argument("--orbit", type=int, default=0)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
        p.add_argument("--target")
        p.add_argument("--out")

    p = sub.add_parser("solve5", help="certified rational roots along a discriminant conic")
    p.add_argument("fixed", nargs="+", help="the four non-swept entries, in tuple order")
    sweep_flags(p)
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=cmd_solve5)

    p = sub.add_parser("families", help="explicit families")
    p.add_argument("variant", choices=("block", "alternating", "pell", "hpell"))
    p.add_argument("--k")
    p.add_argument("--s")
    p.add_argument("--t")
    p.add_argument("--n", help="index range, e.g. 2..5")
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("limits", help="iterated limits for (a3, a4, a5)")
    p.add_argument("triple", nargs=3)
    p.add_argument("--a2", type=int)
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("septic", help="largest real root of P^7(1,-1,1,-1,1,N,N)")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--precision", default="1/1000000000000")
    p.set_defaults(func=cmd_septic)

    p = sub.add_parser("hunt", help="verified q nearest to a target")
    p.add_argument("--source", choices=("solve5", "pell", "hpell"), default="solve5")
    for i in range(1, 5):
        p.add_argument(f"--f{i}", default="1", help=f"range for fixed entry {i}, e.g. -3..3")
    p.add_argument("--n")
    p.add_argument("--top", type=int, default=10)
    sweep_flags(p)
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("verify", help="re-verify a JSONL record file from scratch")
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonFreeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
