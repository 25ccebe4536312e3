"""Command-line entry point: ``metricdim {compute,scan,classify,compose,verify-formula}``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .blocks import CompositionError, compose_generator
from .cactus import (
    DEFAULT_BBR_CAP,
    BbrCapExceeded,
    CactusAnalysis,
    breakdown_from_analysis,
    extremal_classification,
    is_cactus,
)
from .exact import DEFAULT_PAIR_CAP, BudgetExceeded, Mode, SizeCapExceeded, exact_dimension
from .generate import MAX_BUILTIN_CACTUS_N, GraphFilter, enumerate_graphs
from .graph import Graph, GraphError, cyclomatic_number, encode_graph6, parse_graph6
from .harness import ScanTask, UsageError, breakdown_record, scan


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pair-cap", type=int, default=DEFAULT_PAIR_CAP,
                   help=f"refuse exact instances with more item pairs (default {DEFAULT_PAIR_CAP})")
    p.add_argument("--bbr-cap", type=int, default=DEFAULT_BBR_CAP,
                   help=f"cap on candidate BBR sets (default {DEFAULT_BBR_CAP})")
    p.add_argument("--time-budget", type=float, default=None,
                   help="per-graph seconds for the exact solver (default: unlimited)")


def _split(values: Sequence[str] | None, default: tuple[str, ...]) -> tuple[str, ...]:
    if not values:
        return default
    out: list[str] = []
    for v in values:
        out += [x for x in v.split(",") if x]
    return tuple(out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metricdim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="exact dimension of one graph (or one per stdin line with '-')")
    p.add_argument("graph6")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="vertex")
    p.add_argument("--breakdown", action="store_true",
                   help="structural formula breakdown for a cactus with at least one cycle")
    _add_caps(p)

    p = sub.add_parser("scan", help="run a verification campaign and write JSON Lines")
    p.add_argument("--source", required=True,
                   help="enumerate:N | enumerate:A-B | file:PATH | random:N,M,COUNT,SEED | blocks:COUNT,SEED[,MAX_N]")
    p.add_argument("--filter", action="append",
                   help="connected, delta2, delta3, cactus, exclude-cycles, kappa1 (repeat or comma-separate)")
    p.add_argument("--check", action="append",
                   help="conjecture34, formula, extremal, blocks, delta3 or all")
    p.add_argument("--out", default="-", help="JSONL report path ('-' for stdout)")
    p.add_argument("--summary", default=None, help="also write the summary JSON here")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--mixed", action="store_true", help="also compute the mixed dimension")
    p.add_argument("--timing", action="store_true", help="record per-graph seconds (reports stop being byte-stable)")
    _add_caps(p)

    p = sub.add_parser("classify", help="extremal classification of one cactus with c >= 2")
    p.add_argument("graph6")
    p.add_argument("--bbr-cap", type=int, default=DEFAULT_BBR_CAP)

    p = sub.add_parser("compose", help="block-composition certificate for one graph")
    p.add_argument("graph6")
    p.add_argument("--mode", choices=["vertex", "edge"], default="vertex")

    p = sub.add_parser("verify-formula", help="structural formulas against the exact solver on all small cacti")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--min-n", type=int, default=3)
    p.add_argument("--bbr-cap", type=int, default=DEFAULT_BBR_CAP)
    return parser


def _dump(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _compute_one(g: Graph, args) -> dict:
    if args.breakdown:
        if not is_cactus(g) or cyclomatic_number(g) < 1:
            raise GraphError("--breakdown needs a cactus with at least one cycle")
        a = CactusAnalysis(g, args.bbr_cap)
        dw = exact_dimension(g, Mode.VERTEX, args.pair_cap, args.time_budget)
        ew = exact_dimension(g, Mode.EDGE, args.pair_cap, args.time_budget)
        extremal = None
        if a.profile.c >= 2:
            extremal = extremal_classification(g, args.bbr_cap, (dw.size, ew.size)).as_dict()
        return breakdown_record(g, a, dw, ew, extremal)
    w = exact_dimension(g, Mode(args.mode), args.pair_cap, args.time_budget)
    return {"graph6": encode_graph6(g), "n": g.n, "m": g.m, "mode": w.mode.value, "size": w.size,
            "witness": list(w.set)}


def cmd_compute(args) -> int:
    lines = [args.graph6] if args.graph6 != "-" else [x.strip() for x in sys.stdin]
    code = 0
    for lineno, text in enumerate(lines, 1):
        if not text or text.startswith("#"):
            continue
        try:
            _dump(_compute_one(parse_graph6(text), args))
        except (SizeCapExceeded, BudgetExceeded, BbrCapExceeded) as exc:
            _dump({"graph6": text, "status": f"SKIPPED({exc})"})
        except GraphError as exc:
            print(f"line {lineno}: {exc}", file=sys.stderr)
            code = 2
    return code


def cmd_scan(args) -> int:
    task = ScanTask(
        source=args.source,
        filters=_split(args.filter, ("connected",)),
        checks=_split(args.check, ("conjecture34",)),
        pair_cap=args.pair_cap,
        bbr_cap=args.bbr_cap,
        time_budget=args.time_budget,
        mixed=args.mixed,
        timing=args.timing,
    )
    if args.out == "-":
        summary = scan(task, sys.stdout, args.jobs)
        summary_stream = sys.stderr
    else:
        with open(args.out, "w", encoding="ascii") as fh:
            summary = scan(task, fh, args.jobs)
        summary_stream = sys.stdout
    text = json.dumps(summary.to_dict(), sort_keys=True)
    print(text, file=summary_stream)
    if args.summary:
        with open(args.summary, "w", encoding="ascii") as fh:
            fh.write(text + "\n")
    return summary.exit_code


def cmd_classify(args) -> int:
    g = parse_graph6(args.graph6)
    _dump(extremal_classification(g, args.bbr_cap).as_dict())
    return 0


def cmd_compose(args) -> int:
    g = parse_graph6(args.graph6)
    try:
        cert = compose_generator(g, Mode(args.mode))
    except CompositionError as exc:
        print(f"composition failed verification: {exc}", file=sys.stderr)
        return 1
    _dump({"graph6": encode_graph6(g), **cert.as_dict()})
    return 0


def cmd_verify_formula(args) -> int:
    if args.max_n > MAX_BUILTIN_CACTUS_N:
        raise UsageError(f"builtin cactus enumeration stops at n={MAX_BUILTIN_CACTUS_N}")
    checked = 0
    mismatches = []
    for n in range(max(3, args.min_n), args.max_n + 1):
        for g in enumerate_graphs(n, GraphFilter(cactus_only=True, min_cycles=1)):
            bd = breakdown_from_analysis(CactusAnalysis(g, args.bbr_cap))
            dim = exact_dimension(g, Mode.VERTEX).size
            edim = exact_dimension(g, Mode.EDGE).size
            checked += 1
            if bd.dim_formula != dim or bd.edim_formula != edim:
                mismatches.append({"graph6": encode_graph6(g), "dim_formula": bd.dim_formula,
                                   "dim_exact": dim, "edim_formula": bd.edim_formula, "edim_exact": edim})
    _dump({"checked": checked, "mismatches": mismatches, "max_n": args.max_n})
    return 1 if mismatches else 0


COMMANDS = {
    "compute": cmd_compute,
    "scan": cmd_scan,
    "classify": cmd_classify,
    "compose": cmd_compose,
    "verify-formula": cmd_verify_formula,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, GraphError) as exc:
        print(f"metricdim {args.command}: {exc}", file=sys.stderr)
        return 2
    except (SizeCapExceeded, BudgetExceeded, BbrCapExceeded) as exc:
        print(f"metricdim {args.command}: skipped: {exc}", file=sys.stderr)
        return 0


if __name__ == "__main__":
    sys.exit(main())
