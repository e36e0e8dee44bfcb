"""Batch verification front end.

Exit codes: 0 all pass, 1 any fail, 2 no fail but some inconclusive,
64 usage error (unknown suite, unparseable shape, or a window whose
estimated size exceeds the hard cap).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .trees import ParseError, count_objects, parse_theta
from .morphisms import hom_set, render_morphism
from .reports import FAIL, INCONCLUSIVE, PASS
from .suites import SUITES, run_suite

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64

HARD_OBJECT_CAP = 5_000_000


def _env_int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except ValueError:
        return default


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetacell",
        description="Enumerate cell-shape combinatorics and verify the "
        "bounded statements behind them.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    hom = sub.add_parser("hom", help="enumerate a hom-set between two shapes")
    hom.add_argument("source", help='e.g. "[2]([1]([0]),[0])"')
    hom.add_argument("target")
    hom.add_argument("--json", action="store_true")

    verify = sub.add_parser("verify", help="run a named verification suite")
    verify.add_argument(
        "suite", choices=sorted(SUITES) + ["all"], help="which statement family to check"
    )
    verify.add_argument(
        "--max-height",
        type=int,
        default=_env_int("THETACELL_MAX_HEIGHT", 3),
        help="object window height for suites that take one",
    )
    verify.add_argument(
        "--max-width",
        type=int,
        default=_env_int("THETACELL_MAX_WIDTH", 3),
        help="object window arity bound for suites that take one",
    )
    verify.add_argument("--max-terminus", type=int, default=6)
    verify.add_argument("--json", action="store_true")
    verify.add_argument("--jobs", type=int, default=1)
    return parser


def cmd_hom(args) -> int:
    try:
        src = parse_theta(args.source)
        dst = parse_theta(args.target)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    morphisms = hom_set(src, dst)
    if args.json:
        print(
            json.dumps(
                {
                    "source": args.source,
                    "target": args.target,
                    "count": len(morphisms),
                    "morphisms": [render_morphism(f) for f in morphisms],
                }
            )
        )
    else:
        print(f"|Hom({args.source}, {args.target})| = {len(morphisms)}")
        for f in morphisms:
            print(render_morphism(f))
    return EXIT_PASS


def cmd_verify(args) -> int:
    est = count_objects(args.max_height, args.max_width)
    if est > HARD_OBJECT_CAP:
        print(
            f"error: window ({args.max_height}, {args.max_width}) holds "
            f"about {est} shapes; the cap is {HARD_OBJECT_CAP}",
            file=sys.stderr,
        )
        return EXIT_USAGE
    kwargs = {
        "hmax": args.max_height,
        "wmax": args.max_width,
        "max_terminus": args.max_terminus,
    }
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    if args.jobs > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(run_suite, name, **kwargs) for name in names]
            reports = [r for fut in futures for r in fut.result()]
    else:
        reports = []
        for name in names:
            reports.extend(run_suite(name, **kwargs))
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for r in reports:
            print(r.line())
        npass = sum(r.status == PASS for r in reports)
        print(f"-- {npass}/{len(reports)} checks passed")
    if any(r.status == FAIL for r in reports):
        return EXIT_FAIL
    if any(r.status == INCONCLUSIVE for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_PASS


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "hom":
        return cmd_hom(args)
    return cmd_verify(args)


if __name__ == "__main__":
    sys.exit(main())
