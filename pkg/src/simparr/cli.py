"""Command line entry point: ``simparr gen|analyze|verify|dual|render``.

Reports go to stdout as a single JSON document (or to ``--output``).  Exit
codes: 0 success, 1 bad input or a failed verification, 2 when a predicate
stayed undecided at the precision cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import ExitStack
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import io as arrfile
from .arrangement import analysis_report, build_incidence
from .cubics import classify, gen_coset_dual_arrangement, parse_cubic, tangency_report
from .exceptions import ConvergenceFailure, MaxPrecisionExceeded, SimparrError, UndecidedError
from .families import gen_family
from .render import picture, svg
from .scalar import precision_cap
from .verify import SUITES, parse_params, report_undecided, run_suite

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDED = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    backend: Optional[str] = None
    precision_cap: Optional[int] = None
    seed: int = 0
    output: Optional[Path] = None
    figure: Optional[Path] = None


def _emit(payload, output: Optional[Path]) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _chart(value: str) -> Optional[int]:
    if value == "none":
        return None
    try:
        index = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("chart must be a line index or 'none'") from None
    if index < 0:
        raise argparse.ArgumentTypeError("chart must be a non-negative line index")
    return index


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return seed


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("rational", "interval"),
                        help="scalar backend (default: whatever the input holds)")
    common.add_argument("--precision-cap", type=int, metavar="BITS",
                        help="highest precision tried before reporting undecided")
    common.add_argument("--seed", type=_seed, default=0, help="random seed (u64)")
    common.add_argument("--format", choices=("json",), default="json")
    common.add_argument("-o", "--output", type=Path, help="write the result here instead of stdout")

    parser = argparse.ArgumentParser(prog="simparr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a generated arrangement file")
    p.add_argument("family", help="R0, R1, R2 or TANGENT")
    p.add_argument("size", type=int)
    p.add_argument("--bits", type=int, default=arrfile.DEFAULT_FILE_BITS,
                   help="declared precision of interval coordinates")

    p = sub.add_parser("analyze", parents=[common], help="incidence analysis of an arrangement file")
    p.add_argument("input", type=Path)
    p.add_argument("--figure", type=Path, help="also draw the arrangement with matplotlib")
    p.add_argument("--chart", type=_chart, default=None, help="line index sent to infinity, or none")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("params", nargs="*", metavar="NAME=VALUES",
                   help="parameter ranges such as m=3..10 or n=24,30")
    p.add_argument("--cubic", nargs="+", metavar="a=A b=B", help="curve for coset suites")
    p.add_argument("--figure", type=Path, help="also write a summary chart")

    p = sub.add_parser("dual", parents=[common],
                       help="coset dual arrangement of a cubic, with its tangency report")
    p.add_argument("n", type=int, help="order of the subgroup")
    p.add_argument("--cubic", nargs="+", required=True, metavar="a=A b=B")
    p.add_argument("--offset-index", type=int, default=0)
    p.add_argument("--arrangement", type=Path, help="also write the arrangement file here")
    p.add_argument("--bits", type=int, default=arrfile.DEFAULT_FILE_BITS)

    p = sub.add_parser("render", parents=[common], help="draw an arrangement file as SVG")
    p.add_argument("input", type=Path)
    p.add_argument("--chart", type=_chart, default=None, help="line index sent to infinity, or none")
    p.add_argument("--figure", type=Path, help="also draw it with matplotlib")
    return parser


def _load(path: Path, backend: Optional[str]):
    A, headers = arrfile.read_arrangement(path)
    return arrfile.as_backend(A, backend), headers


def cmd_gen(args) -> int:
    A = gen_family(args.family, args.size)
    text = arrfile.format_arrangement(A, family=f"{args.family.upper()} {args.size}", bits=args.bits)
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8")
    return EXIT_OK


def cmd_analyze(args) -> int:
    A, _ = _load(args.input, args.backend)
    S = build_incidence(A)
    report = analysis_report(S)
    _emit(report, args.output)
    if args.figure is not None:
        from .plotting import plot_picture

        plot_picture(picture(A, args.chart, S), args.figure, title=str(report["family"] or ""))
    return EXIT_OK


def cmd_verify(args) -> int:
    params = parse_params(args.params)
    cubic = None
    if args.cubic:
        c = parse_cubic(" ".join(args.cubic))
        cubic = (c.a, c.b)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(name, params if args.suite != "all" else None, args.seed, cubic)
               for name in names]
    _emit(reports[0] if args.suite != "all" else reports, args.output)
    if args.figure is not None:
        from .plotting import plot_suite

        combined = {"suite": args.suite, "cases": sum(r["cases"] for r in reports),
                    "failures": [f for r in reports for f in r["failures"]]}
        plot_suite(combined, args.figure)
    if any(report_undecided(r) for r in reports):
        return EXIT_UNDECIDED
    return EXIT_INPUT if any(r["failures"] for r in reports) else EXIT_OK


def cmd_dual(args) -> int:
    c = parse_cubic(" ".join(args.cubic))
    if not classify(c).smooth:
        raise ValueError("coset arrangements need a smooth cubic")
    A = gen_coset_dual_arrangement(c, args.n, args.offset_index)
    report = tangency_report(A, c)
    _emit(report, args.output)
    if args.arrangement is not None:
        arrfile.write_arrangement(A, args.arrangement, family=f"coset {args.n}", bits=args.bits)
    return EXIT_OK


def cmd_render(args) -> int:
    A, _ = _load(args.input, args.backend)
    pic = picture(A, args.chart)
    text = svg(pic)
    if args.output is None:
        sys.stdout.write(text)
    else:
        args.output.write_text(text, encoding="utf-8")
    if args.figure is not None:
        from .plotting import plot_picture

        plot_picture(pic, args.figure)
    return EXIT_OK


COMMANDS = {"gen": cmd_gen, "analyze": cmd_analyze, "verify": cmd_verify, "dual": cmd_dual,
            "render": cmd_render}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(args.command, args.backend, args.precision_cap, args.seed, args.output,
                       getattr(args, "figure", None))
    try:
        with ExitStack() as stack:
            if config.precision_cap is not None:
                stack.enter_context(precision_cap(config.precision_cap))
            return COMMANDS[args.command](args)
    except (UndecidedError, MaxPrecisionExceeded, ConvergenceFailure) as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (SimparrError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
