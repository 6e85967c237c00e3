"""Command-line interface.

Exit codes: 0 success, 1 a mathematical disagreement was found (classify,
sweep), 2 invalid input or usage.  Every subcommand takes p q k positionally
in that order where a knot is involved.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .arith import WORD_BUDGET_ENV, word_budget
from .cone import cone_diagram, is_lspace_surgery
from .errors import (CheckpointCorrupt, ParameterMismatch, ResourceLimit,
                     SimpleKnotError)
from .families import ALL_TAGS, classify, enumerate_family, family_tables, matched_tags
from .floer import alexander_polynomial, euler_characteristic, f_profile, iter_f
from .knot import (has_integer_zhs_surgery, homology_class, is_primitive,
                   surgery_descriptor, validate)
from .sweep import estimated_cost, resume, verify_conjecture

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _grading(g: Fraction) -> int | str:
    return int(g) if g.denominator == 1 else f"{g.numerator}/{g.denominator}"


def _emit(payload: dict, fmt: str, human: str, csv_header: list[str], csv_rows: list[list]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(csv_header)
        w.writerows(csv_rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(human)


# -- subcommands ---------------------------------------------------------------

def cmd_genus(args) -> int:
    K = validate(args.p, args.q, args.k)
    prof = f_profile(K)
    chi = euler_characteristic(K)
    prim = is_primitive(K)
    delta = alexander_polynomial(K) if prim else None
    gradings = [_grading(g) for g in prof.gradings]
    payload = {
        "schema": f"simpleknots.genus/{SCHEMA_VERSION}",
        "p": K.p, "q": K.q, "k": K.k,
        "primitive": prim,
        "width": prof.width,
        "genus": prof.genus,
        "gradings": gradings,
        "euler_characteristic": str(chi),
        "euler_characteristic_terms": chi.serialize(),
        "alexander": str(delta) if delta is not None else None,
        "alexander_terms": delta.serialize() if delta is not None else None,
    }
    human = "\n".join([
        f"knot            {K}",
        f"width           {prof.width}",
        f"genus           {prof.genus if prim else 'undefined (not primitive)'}",
        f"gradings        {' '.join(str(g) for g in gradings)}",
        f"euler char      {chi}",
        f"alexander       {delta if delta is not None else 'undefined (not primitive)'}",
    ])
    _emit(payload, args.format, human,
          ["p", "q", "k", "width", "genus", "gradings", "euler_characteristic", "alexander"],
          [[K.p, K.q, K.k, prof.width, "" if prof.genus is None else prof.genus,
            " ".join(str(g) for g in gradings), str(chi), "" if delta is None else str(delta)]])
    return 0


def cmd_classify(args) -> int:
    rep = classify(args.p, args.k, tange_negative_j=args.tange_negative_j)
    payload = {"schema": f"simpleknots.classify/{SCHEMA_VERSION}", **rep.to_json()}
    lines = [f"knot            K({rep.p},{rep.q},{rep.k})   (q = k^2 mod p)"]
    if rep.matches:
        seen = set()
        for m in rep.matches:
            if (m.tag, m.representative) in seen:
                continue  # one witness per family and representative is enough on screen
            seen.add((m.tag, m.representative))
            wit = ", ".join(f"{a}={b}" for a, b in m.witness.items())
            lines.append(f"  {m.tag:<15} via {m.representative:<6} (k*={m.k_star})" + (f" {wit}" if wit else ""))
    else:
        lines.append("  no Berge or Tange family matches")
    verdict = "<" if rep.lspace_criterion else ">="
    lines.append(f"width           {rep.width} {verdict} {2 * rep.p} (2p)")
    lines.append(f"genus           {rep.genus}")
    lines.append(f"agreement       {'yes' if rep.agrees else 'NO: criterion and membership disagree'}")
    _emit(payload, args.format, "\n".join(lines),
          ["p", "k", "q", "families", "width", "genus", "lspace_criterion", "agrees"],
          [[rep.p, rep.k, rep.q, " ".join(matched_tags(rep.matches)), rep.width, rep.genus,
            rep.lspace_criterion, rep.agrees]])
    return 0 if rep.agrees else 1


def cmd_surgeries(args) -> int:
    K = validate(args.p, args.q, args.k)
    prim = is_primitive(K)
    zhs = has_integer_zhs_surgery(K)
    payload = {
        "schema": f"simpleknots.surgeries/{SCHEMA_VERSION}",
        "p": K.p, "q": K.q, "k": K.k,
        "homology_class": homology_class(K).value,
        "primitive": prim,
        "self_linking": None,
        "coefficients": [],
        "zhs_surgery": zhs,
        "zhs_coefficients": [],
        "lspace": {},
    }
    lines = [f"knot            {K}",
             f"homology class  {K.k} [b]",
             f"primitive       {'yes' if prim else 'no'}"]
    if prim:
        desc = surgery_descriptor(K, (-args.window, args.window))
        payload["self_linking"] = desc.a
        payload["coefficients"] = list(desc.coefficients)
        payload["zhs_coefficients"] = list(desc.homology_sphere_coefficients)
        lines.append(f"self-linking    a = {desc.a}  (K.K = {desc.a}/{K.p} mod 1)")
        lines.append(f"surgeries       m = -{desc.a} mod {K.p}: {', '.join(map(str, desc.coefficients))}")
        width = f_profile(K).width
        for m in desc.homology_sphere_coefficients:
            payload["lspace"][str(m)] = {"cone": is_lspace_surgery(K, m), "width_criterion": width < 2 * K.p}
        ms = desc.homology_sphere_coefficients
        lines.append(f"ZHS surgery     {'yes (m=' + ', '.join(map(str, ms)) + ')' if zhs else 'no'}")
        for m in ms:
            v = payload["lspace"][str(m)]
            lines.append(f"L-space (m={m:+d}) {'yes' if v['cone'] else 'no'}  "
                         f"(width {width} vs 2p = {2 * K.p})")
    else:
        lines.append("ZHS surgery     no")
    _emit(payload, args.format, "\n".join(lines),
          ["p", "q", "k", "homology_class", "primitive", "self_linking", "zhs_surgery", "zhs_coefficients"],
          [[K.p, K.q, K.k, K.k, prim, "" if payload["self_linking"] is None else payload["self_linking"],
            zhs, " ".join(map(str, payload["zhs_coefficients"]))]])
    return 0


def cmd_cone(args) -> int:
    K = validate(args.p, args.q, args.k)
    d = cone_diagram(K, args.m)
    payload = {
        "schema": f"simpleknots.cone/{SCHEMA_VERSION}",
        "p": K.p, "q": K.q, "k": K.k, "m": d.m,
        "mirrored": d.mirrored,
        "window": list(d.window),
        "chains": [{"residue": c.residue, "start": c.start, "labels": c.labels, "rank": c.rank}
                   for c in d.chains],
        "summands": [{"a": a, "b": b, "type": f"[{l},{r}]"} for a, b, l, r in d.summands],
        "rank": d.rank,
        "lspace": d.is_lspace,
    }
    lines = [f"knot            {K}, m = {d.m}" + ("  (computed on the mirror)" if d.mirrored else "")]
    for c in d.chains:
        lines.append(f"  class {c.residue:>3} mod {abs(d.m)}: from n={c.start}: {c.labels}   rank {c.rank}")
    nontrivial = [s for s in d.summands if s[2] != s[3]]
    lines.append("summands        " + (" ".join(f"[{l},{r}]@{a}..{b}" for a, b, l, r in nontrivial) or "-"))
    lines.append(f"rank            {d.rank}")
    lines.append(f"L-space         {'yes' if d.is_lspace else 'no'}")
    _emit(payload, args.format, "\n".join(lines),
          ["residue", "start", "labels", "rank"],
          [[c.residue, c.start, c.labels, c.rank] for c in d.chains])
    return 0


def cmd_enumerate(args) -> int:
    pairs = enumerate_family(args.tag, args.max_p, tange_negative_j=args.tange_negative_j)
    payload = {"schema": f"simpleknots.enumerate/{SCHEMA_VERSION}", "tag": args.tag,
               "max_p": args.max_p, "pairs": [list(x) for x in pairs]}
    _emit(payload, args.format, "\n".join(f"{p} {k}" for p, k in pairs),
          ["p", "k"], [list(x) for x in pairs])
    return 0


def cmd_profile(args) -> int:
    K = validate(args.p, args.q, args.k)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["i", "f"])
        for i, v in enumerate(iter_f(K.p, K.q, K.k)):
            w.writerow([i, v])
    finally:
        if args.out:
            out.close()
    return 0


def cmd_tables(args) -> int:
    print(json.dumps(family_tables(), indent=2))
    return 0


def cmd_sweep(args) -> int:
    quiet = args.quiet
    progress = None if quiet else sys.stderr
    dedup = None if args.dedup is None else args.dedup == "on"
    if args.resume:
        report = resume(args.resume, args.jobs, max_p=args.max_p, dedup=dedup,
                        tange_negative_j=args.tange_negative_j,
                        exceptions_path=args.exceptions, progress_stream=progress)
    else:
        if args.max_p is None:
            raise UsageError("--max-p is required unless --resume is given")
        if args.max_p < 2:
            raise UsageError("--max-p must be at least 2")
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        dedup = True if dedup is None else dedup
        tnj = True if args.tange_negative_j is None else args.tange_negative_j
        if args.max_p > 10_000 and not quiet:
            ops = estimated_cost(args.max_p, dedup)
            hours = ops / 1e9 / args.jobs / 3600
            print(f"sweep: estimated {ops:.2e} word operations "
                  f"(~{hours:.1f} h at 1e9 ops/s per worker, {args.jobs} worker(s))",
                  file=sys.stderr)
        report = verify_conjecture(args.max_p, args.jobs, dedup, args.checkpoint,
                                   tange_negative_j=tnj, exceptions_path=args.exceptions,
                                   progress_stream=progress)
    data = {"schema": f"simpleknots.sweep/{SCHEMA_VERSION}", **report.to_json()}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(data, fh, indent=2)
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(f"max_p                    {report.max_p}")
        print(f"dedup                    {'on' if report.dedup else 'off'}")
        print(f"knots checked            {report.knots_checked}")
        print(f"width < 2p               {report.lspace_count}")
        print(f"conjecture violations    {len(report.conjecture_violations)}")
        print(f"realizability anomalies  {len(report.realizability_anomalies)}")
        print(f"elapsed                  {report.elapsed:.2f} s on {report.worker_count} worker(s)")
        for e in report.conjecture_violations + report.realizability_anomalies:
            print(json.dumps(e.to_json()))
    return 0 if report.clean else 1


# -- parser --------------------------------------------------------------------

def _knot_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.add_argument("k", type=int)


def _format_arg(sp: argparse.ArgumentParser, choices=("human", "json", "csv")) -> None:
    sp.add_argument("--format", choices=choices, default="human")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simpleknots",
        description="Knot Floer invariants and surgeries of simple knots K(p,q,k) in lens spaces.",
        epilog=f"Kernels accept p up to {word_budget()} (override with {WORD_BUDGET_ENV}).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("genus", help="width, genus, gradings, Euler characteristic, Alexander polynomial")
    _knot_args(sp)
    _format_arg(sp)
    sp.set_defaults(func=cmd_genus)

    sp = sub.add_parser("classify", help="Berge/Tange membership of (p, k) with q = k^2")
    sp.add_argument("p", type=int)
    sp.add_argument("k", type=int)
    _format_arg(sp)
    sp.add_argument("--tange-negative-j", action=argparse.BooleanOptionalAction, default=True,
                    help="allow negative j in the Tange families (default: on)")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("surgeries", help="self-linking, integer surgeries and homology-sphere verdict")
    _knot_args(sp)
    sp.add_argument("--window", type=int, default=10, help="list coefficients m with |m| <= WINDOW")
    _format_arg(sp)
    sp.set_defaults(func=cmd_surgeries)

    sp = sub.add_parser("cone", help="mapping-cone labels and rank of the m-surgery")
    _knot_args(sp)
    sp.add_argument("m", type=int)
    _format_arg(sp)
    sp.set_defaults(func=cmd_cone)

    sp = sub.add_parser("enumerate", help="list (p, k) members of a family")
    sp.add_argument("tag", choices=ALL_TAGS, metavar="TAG", help=", ".join(ALL_TAGS))
    sp.add_argument("--max-p", type=int, required=True)
    sp.add_argument("--tange-negative-j", action=argparse.BooleanOptionalAction, default=True)
    _format_arg(sp)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("profile", help="write the f-profile as i,f CSV rows")
    _knot_args(sp)
    sp.add_argument("--out", help="output file (default: stdout)")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("tables", help="dump the family coefficient tables as JSON")
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("sweep", help="verify the width/family biconditional for all p <= MAX_P")
    sp.add_argument("--max-p", type=int)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--checkpoint", help="checkpoint file, rewritten atomically during the run")
    sp.add_argument("--resume", metavar="CHECKPOINT", help="continue the run stored in CHECKPOINT")
    sp.add_argument("--dedup", choices=("on", "off"), default=None,
                    help="check one representative per {+-k, +-k^-1} orbit (default: on)")
    sp.add_argument("--tange-negative-j", action=argparse.BooleanOptionalAction, default=None)
    sp.add_argument("--out", help="write the final report JSON here")
    sp.add_argument("--exceptions", help="append exceptions as JSON lines as they are found")
    sp.add_argument("--quiet", action="store_true", help="no progress on stderr")
    _format_arg(sp, ("human", "json"))
    sp.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SimpleKnotError, UsageError, ParameterMismatch, CheckpointCorrupt,
            ResourceLimit, FileNotFoundError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        print(f"{parser.prog}: interrupted", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
