"""Command-line interface.

Subcommands:

    demo NAME            write a built-in target set in the file grammar
    check TARGET         run a regime's hypothesis checks
    synth TARGET         synthesize the witness and emit its sampled graph
    strips TARGET        build and verify the nested strip certificates
    verify TARGET        estimate the accumulation set and compare with the
                         target (plus far-point and divergence checks)

TARGET is a file path, '-' for stdin, or a built-in demo name. Exit codes:
0 success/PASS, 1 check or verification FAIL, 2 usage or parse errors.
All file output is atomic (write to temp, rename).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .conditions import Regime, check_regime
from .demos import DEMO_NAMES, UnknownDemoError, demo_c_order, demo_set, truncation_notice
from .fileio import ParseError, parse_target_text, serialize_target
from .geometry import TargetSet
from .intervals import rat
from .strips import build_strip_family, epsilon_schedule, verify_strips
from .synthesis import RegimeUnsatisfiedError, SynthFunction, synthesize
from .verification import (
    accumulation_estimate,
    closure_direction_check,
    hausdorff_to_target,
    remark31_check,
    sample_graph,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _write_atomic(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    target = Path(path)
    fd, tmp = tempfile.mkstemp(dir=str(target.parent) or ".", prefix=target.name)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _load_target(spec: str, depth: int) -> Tuple[TargetSet, Optional[str]]:
    """Resolve a demo name, '-', or a path. Returns (set, demo name or None)."""
    if spec in DEMO_NAMES:
        notice = truncation_notice(spec, depth)
        if notice:
            print(notice, file=sys.stderr)
        return demo_set(spec, depth), spec
    if spec == "-":
        return parse_target_text(sys.stdin.read()), None
    return parse_target_text(Path(spec).read_text(encoding="utf-8")), None


def _synthesize(target: TargetSet, demo: Optional[str], args: argparse.Namespace) -> SynthFunction:
    c_order = demo_c_order(demo, args.depth) if demo else None
    return synthesize(
        target,
        Regime.from_name(args.regime),
        depth=args.depth,
        signed=args.signed,
        c_order=c_order,
    )


def _fmt(value: float, precision: int) -> str:
    return f"{value:.{precision}g}"


def _graph_csv(f: SynthFunction, grid: int, precision: int) -> str:
    rows = ["x,y"]
    for x, y in sample_graph(f, Fraction(1, grid)):
        rows.append(f"{_fmt(float(x), precision)},{_fmt(float(y), precision)}")
    return "\n".join(rows) + "\n"


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_demo(args: argparse.Namespace) -> int:
    target = demo_set(args.name, args.depth)
    notice = truncation_notice(args.name, args.depth)
    if notice:
        print(notice, file=sys.stderr)
    comments = (f"built-in demo '{args.name}' depth={args.depth}",)
    _write_atomic(args.out, serialize_target(target, comments))
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    target, _ = _load_target(args.target, args.depth)
    verdict = check_regime(target, Regime.from_name(args.regime))
    print("\n".join(verdict.report_lines()))
    return EXIT_OK if verdict.passed else EXIT_FAIL


def _cmd_synth(args: argparse.Namespace) -> int:
    target, demo = _load_target(args.target, args.depth)
    f = _synthesize(target, demo, args)
    _write_atomic(args.out, _graph_csv(f, args.grid, args.precision))
    return EXIT_OK


def _cmd_strips(args: argparse.Namespace) -> int:
    target, demo = _load_target(args.target, args.depth)
    f = _synthesize(target, demo, args)
    grid = [Fraction(i, args.grid) for i in range(args.grid + 1)]
    sched = epsilon_schedule(f, grid)
    family = build_strip_family(f, sched)
    report = verify_strips(family, f)
    print("\n".join(report.lines()))
    if args.out:
        for level in family.levels:
            rows = ["x,lo,hi"]
            for x, lo, hi in zip(family.col_floats, level.lo, level.hi):
                rows.append(
                    f"{_fmt(x, args.precision)},{_fmt(lo, args.precision)},"
                    f"{_fmt(hi, args.precision)}"
                )
            _write_atomic(f"{args.out}.n{level.n}.csv", "\n".join(rows) + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_verify(args: argparse.Namespace) -> int:
    target, demo = _load_target(args.target, args.depth)
    f = _synthesize(target, demo, args)
    eps = args.eps if args.eps is not None else 2.0 / args.grid
    points = sample_graph(f, Fraction(1, args.grid))
    est = accumulation_estimate(points, eps, min_count=args.min_count, depth=args.depth)
    y_cap = args.ycap if args.ycap is not None else args.depth / 2.0
    d_fwd, d_bwd = hausdorff_to_target(est, target, y_cap)
    far = remark31_check(points, f, eps)
    closure = closure_direction_check(f)
    bound = 2.0 * eps + 1.0 / args.depth
    hausdorff_ok = d_fwd <= bound and d_bwd <= bound
    print(
        f"VERIFY d_forward={_fmt(d_fwd, args.precision)}"
        f" d_backward={_fmt(d_bwd, args.precision)}"
        f" remark31={'PASS' if far.passed else 'FAIL'}"
        f" closure={closure.status()}"
    )
    if args.out:
        rows = ["x,y"]
        for cx, cy in est.candidates:
            rows.append(f"{_fmt(cx, args.precision)},{_fmt(cy, args.precision)}")
        _write_atomic(args.out, "\n".join(rows) + "\n")
    ok = hausdorff_ok and far.passed and (closure.vacuous or closure.passed)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _add_common(sub: argparse.ArgumentParser, regime: bool = True) -> None:
    sub.add_argument("--depth", type=int, default=10,
                     help="truncation depth N (default 10)")
    if regime:
        sub.add_argument("--regime", required=True,
                         choices=[r.value for r in Regime],
                         help="synthesis regime")
        sub.add_argument("--signed", action="store_true",
                         help="sign the empty-slice values toward the "
                              "closure divergence direction")
    sub.add_argument("--grid", type=int, default=1024,
                     help="verification grid resolution M (default 1024)")
    sub.add_argument("--precision", type=int, default=12,
                     help="significant digits in CSV output (default 12)")
    sub.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="accumgraph",
        description="Decide, synthesize and verify graph accumulation sets.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_demo = subs.add_parser("demo", help="write a built-in target set")
    p_demo.add_argument("name", choices=DEMO_NAMES)
    p_demo.add_argument("--depth", type=int, default=10)
    p_demo.add_argument("--out", default=None)
    p_demo.set_defaults(func=_cmd_demo)

    p_check = subs.add_parser("check", help="run regime hypothesis checks")
    p_check.add_argument("target", help="target file, '-', or demo name")
    p_check.add_argument("--regime", required=True,
                         choices=[r.value for r in Regime])
    p_check.add_argument("--depth", type=int, default=10)
    p_check.set_defaults(func=_cmd_check)

    p_synth = subs.add_parser("synth", help="synthesize and emit sampled graph")
    p_synth.add_argument("target")
    _add_common(p_synth)
    p_synth.set_defaults(func=_cmd_synth)

    p_strips = subs.add_parser("strips", help="build and verify strip certificates")
    p_strips.add_argument("target")
    _add_common(p_strips)
    p_strips.set_defaults(func=_cmd_strips)

    p_verify = subs.add_parser("verify", help="verify the accumulation set")
    p_verify.add_argument("target")
    _add_common(p_verify)
    p_verify.add_argument("--eps", type=float, default=None,
                          help="clustering cell size (default 2/grid)")
    p_verify.add_argument("--min-count", type=int, default=3,
                          help="distinct-x samples per candidate cell (default 3)")
    p_verify.add_argument("--ycap", type=float, default=None,
                          help="y band for the Hausdorff comparison (default depth/2)")
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownDemoError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RegimeUnsatisfiedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("\n".join(exc.verdict.report_lines()), file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
