"""Command-line front end.

Subcommands: gen, check, feasible, count, bench.  Exit codes are stable for
scripting: 0 success, 1 domain failure (infeasible margins, oracle size
guard), 2 validation failure, 64 usage error, 65 input parse error.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys

from .bench import measure_batch_speedup, measure_scaling
from .constructive import deterministic_rect
from .core import (FeasibilityError, MagicSpec, feasible_pairs, validate)
from .formats import FORMATS, ParseError, parse_many, render_many
from .generator import BatchConfig, generate, generate_batch
from .oracle import OracleSizeError, enumerate_matrices
from .rng import derive_seed

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INVALID = 2
EXIT_USAGE = 64
EXIT_PARSE = 65


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_margin_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("-m", "--rows", type=int, help="row count (defaults to --cols)")
    p.add_argument("-n", "--cols", type=int, help="column count (side length with -k)")
    p.add_argument("-k", type=int, dest="k",
                   help="square shorthand: row and column sums both k")
    p.add_argument("--row-sum", type=int, help="required sum of every row")
    p.add_argument("--col-sum", type=int, help="required sum of every column")


def _spec_from_args(args) -> MagicSpec:
    if args.k is not None:
        if args.row_sum is not None or args.col_sum is not None:
            raise UsageError("-k cannot be combined with --row-sum/--col-sum")
        n = args.cols if args.cols is not None else args.rows
        if n is None:
            raise UsageError("-k needs a side length (-n)")
        if args.rows is not None and args.cols is not None and args.rows != args.cols:
            raise UsageError("-k is the square shorthand; -m and -n must agree")
        try:
            return MagicSpec.square(n, args.k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.cols is None and args.rows is None:
        raise UsageError("need dimensions: -n (and -m for non-square)")
    if args.row_sum is None or args.col_sum is None:
        raise UsageError("need --row-sum and --col-sum (or the -k shorthand)")
    rows = args.rows if args.rows is not None else args.cols
    cols = args.cols if args.cols is not None else args.rows
    try:
        return MagicSpec(rows, cols, args.row_sum, args.col_sum)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _dims_from_args(args) -> tuple[int, int]:
    if args.cols is None and args.rows is None:
        raise UsageError("need dimensions: -m and -n")
    rows = args.rows if args.rows is not None else args.cols
    cols = args.cols if args.cols is not None else args.rows
    return rows, cols


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_gen(args) -> int:
    spec = _spec_from_args(args)
    if args.count < 0:
        raise UsageError(f"--count must be non-negative, got {args.count}")
    if not spec.is_feasible():
        raise FeasibilityError(spec.rows_m, spec.cols_n, spec.row_sum_a, spec.col_sum_b,
                               feasible_pairs(spec.rows_m, spec.cols_n))

    if args.deterministic:
        if args.count != 1:
            raise UsageError("--deterministic produces a single canonical matrix; "
                             "drop --count")
        matrices = [deterministic_rect(spec)]
        metas = [{"a": spec.row_sum_a, "b": spec.col_sum_b, "seed": None}]
    else:
        seed = args.seed if args.seed is not None else secrets.randbits(64)
        print(f"seed: {seed}", file=sys.stderr)
        if args.count == 1:
            matrices = [generate(spec, seed)]
            seeds = [seed]
        else:
            matrices = generate_batch(spec, BatchConfig(args.count, seed, args.workers))
            seeds = [derive_seed(seed, i) for i in range(args.count)]
        metas = [{"a": spec.row_sum_a, "b": spec.col_sum_b, "seed": s} for s in seeds]

    _write_output(render_many(matrices, args.format, metas), args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    if (args.row_sum is None) != (args.col_sum is None):
        raise UsageError("give both --row-sum and --col-sum, or neither to auto-infer")
    if args.input is None or args.input == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.input) as fh:
                text = fh.read()
        except OSError as exc:
            print(f"cannot read input: {exc}", file=sys.stderr)
            return EXIT_PARSE
    matrices = parse_many(text, args.format)

    all_valid = True
    for matrix in matrices:
        if args.row_sum is not None:
            try:
                spec = MagicSpec(matrix.rows_m, matrix.cols_n, args.row_sum, args.col_sum)
            except ValueError:
                print(f"INVALID: sums ({args.row_sum}, {args.col_sum}) out of range "
                      f"for {matrix.rows_m}x{matrix.cols_n}")
                all_valid = False
                continue
        else:
            rs, cs = matrix.row_sums(), matrix.col_sums()
            spec = MagicSpec(matrix.rows_m, matrix.cols_n, rs[0], cs[0])
        report = validate(matrix, spec)
        if report.is_valid:
            print(f"VALID a={spec.row_sum_a} b={spec.col_sum_b}")
        else:
            axis, index, observed, expected = report.first_violation
            print(f"INVALID {axis} {index}: sum {observed}, expected {expected}")
            all_valid = False
    return EXIT_OK if all_valid else EXIT_INVALID


def cmd_feasible(args) -> int:
    rows, cols = _dims_from_args(args)
    try:
        pairs = feasible_pairs(rows, cols)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    for a, b in pairs:
        print(f"{a} {b}")
    return EXIT_OK


def cmd_count(args) -> int:
    spec = _spec_from_args(args)
    result = enumerate_matrices(spec, collect_limit=0)
    print(result.count)
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s]
    except ValueError:
        raise UsageError(f"--sizes must be comma-separated integers, got {args.sizes!r}") from None
    if not sizes:
        raise UsageError("--sizes must name at least one size")
    try:
        report = measure_scaling(sizes, k_policy=args.k_policy, reps=args.reps)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    csv_text = "\n".join(report.csv_lines()) + "\n"
    _write_output(csv_text, args.report)
    if report.exponent is None:
        print("scaling exponent: n/a (need at least two distinct sizes)", file=sys.stderr)
    else:
        print(f"scaling exponent: {report.exponent:.3f}", file=sys.stderr)

    if args.workers:
        try:
            worker_list = [int(w) for w in args.workers.split(",") if w]
        except ValueError:
            raise UsageError(f"--workers must be comma-separated integers, "
                             f"got {args.workers!r}") from None
        n = max(sizes)
        spec = MagicSpec.square(n, min(n, int(n * args.k_policy)))
        count = max(worker_list) * 4
        for w, throughput in measure_batch_speedup(spec, count, worker_list):
            print(f"workers={w} matrices_per_second={throughput:.3f}", file=sys.stderr)

    if args.json:
        with open(args.json, "w") as fh:
            json.dump(report.to_json_obj(), fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="binmagic",
        description="Generate and check random binary matrices with constant "
                    "row and column sums.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate matrices", parents=[], add_help=True)
    _add_margin_args(p)
    p.add_argument("--seed", type=int, help="64-bit seed (default: system entropy)")
    p.add_argument("--count", type=int, default=1, help="how many matrices (default 1)")
    p.add_argument("--format", choices=FORMATS, default="dense")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.add_argument("--workers", type=int, default=0,
                   help="worker threads for --count > 1 (0 = auto)")
    p.add_argument("--deterministic", action="store_true",
                   help="emit the canonical seedless construction instead of sampling")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="validate matrices from a file or stdin")
    p.add_argument("input", nargs="?", help="input path (default stdin)")
    p.add_argument("--format", choices=FORMATS, default="dense")
    p.add_argument("--row-sum", type=int, help="expected row sum (with --col-sum)")
    p.add_argument("--col-sum", type=int, help="expected column sum (with --row-sum)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("feasible", help="list all realizable (row_sum, col_sum) pairs")
    p.add_argument("-m", "--rows", type=int)
    p.add_argument("-n", "--cols", type=int)
    p.set_defaults(func=cmd_feasible)

    p = sub.add_parser("count", help="exact number of matrices (small instances)")
    _add_margin_args(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("bench", help="measure generation scaling")
    p.add_argument("--sizes", required=True, help="comma-separated sizes, e.g. 500,1000,2000")
    p.add_argument("--k-policy", type=float, default=0.5,
                   help="sums as a fraction of n (default 0.5)")
    p.add_argument("--reps", type=int, default=5, help="timed repetitions per size")
    p.add_argument("--workers", help="comma-separated worker counts for batch throughput")
    p.add_argument("--report", help="CSV output path (default stdout)")
    p.add_argument("--json", help="also write a JSON report to this path")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"binmagic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"binmagic: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (FeasibilityError, OracleSizeError) as exc:
        print(f"binmagic: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run() -> None:
    sys.exit(main())
