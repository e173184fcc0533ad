#!/usr/bin/env python3
# Copyright 2022 Canonical Ltd.
# See LICENSE file for licensing details.

"""Command-line front end.

    multiharmonic verify theorem1 --n 35
    multiharmonic verify all --max-n 500 --format json
    multiharmonic sum triple --n 5 --sign alt --mod 5
    multiharmonic bernoulli 18 --mod 5
    multiharmonic selftest --jobs 4

Exit codes: 0 when every report passes, 1 on a failed report or a domain error,
2 on a usage error.
"""

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from arith import Factorization, HarmonicSumsError, Residue, factorize
from bernoulli import bernoulli, bernoulli_mod
from config import GRID_PATH, METHODS, ConfigError, GridPoint, Settings, load_grid
from congruence import CongruenceReport, Method, verify
from harmonic import (
    CoprimalityFilter,
    SignPattern,
    half_cube_sum,
    kfold_sum_naive,
    progression_reciprocal_sum,
    signed_cube_sum,
    triple_sum_fast_alternating,
    triple_sum_fast_uniform,
    triple_sum_naive,
)
from output import render, report_document, value_document

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

SUM_KINDS = ("triple", "kfold", "progression", "cube", "halfcube")
# flags that become verifier parameters, in report order
PARAM_FLAGS = ("n", "r0", "p", "r", "p1", "r1", "p2", "r2", "k", "m", "x", "nn", "sign")


class UsageError(ValueError):
    """Raised for flag combinations argparse cannot rule out by itself."""


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs"
    )
    common.add_argument("--format", choices=("table", "json"), default=None)
    common.add_argument("--jobs", type=int, default=None, help="worker processes")
    common.add_argument("--max-n", type=int, default=None, help="skip larger grid points")
    common.add_argument(
        "--naive-threshold",
        type=int,
        default=None,
        help="largest bound evaluated by the brute-force oracle by default",
    )
    common.add_argument("--grid", default=str(GRID_PATH), help="acceptance grid (YAML)")
    return common


def build_parser() -> argparse.ArgumentParser:
    """Parser for the `verify`, `selftest`, `sum` and `bernoulli` commands."""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="multiharmonic",
        description="Evaluate multiharmonic sums modulo composites and verify congruences.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify_cmd = commands.add_parser(
        "verify",
        parents=[common],
        help="verify a statement",
        description=(
            "TARGET is theorem1, theorem2, corollary:<id>, literature:<id>, lemma:<id> or all. "
            "Without parameter flags, the target's points from the grid are used."
        ),
    )
    verify_cmd.add_argument("target")
    for flag in ("n", "r0", "p", "r", "p1", "r1", "p2", "r2", "k", "m", "nn"):
        verify_cmd.add_argument(f"--{flag}", type=int, default=None)
    verify_cmd.add_argument("--x", default=None, help="integer, or a fraction a/b for lemma:l2_4")
    verify_cmd.add_argument("--sign", choices=[s.value for s in SignPattern], default=None)
    verify_cmd.add_argument("--method", choices=METHODS, default=None)

    sum_cmd = commands.add_parser("sum", parents=[common], help="evaluate a sum")
    sum_cmd.add_argument("kind", choices=SUM_KINDS)
    sum_cmd.add_argument("--n", "--target", dest="n", type=int, required=True)
    sum_cmd.add_argument("--mod", type=int, default=None)
    sum_cmd.add_argument("--k", type=int, default=3, help="number of parts for kfold")
    sum_cmd.add_argument("--sign", choices=[s.value for s in SignPattern], default="uniform")
    sum_cmd.add_argument(
        "--filter", default="", help="comma-separated primes the indices must avoid"
    )
    sum_cmd.add_argument("--x", type=int, default=1)
    sum_cmd.add_argument("--mult", type=int, default=1)
    sum_cmd.add_argument("--method", choices=METHODS, default="naive")

    bernoulli_cmd = commands.add_parser("bernoulli", parents=[common], help="print B_k")
    bernoulli_cmd.add_argument("k", type=int)
    bernoulli_cmd.add_argument("--mod", type=int, default=None)

    commands.add_parser("selftest", parents=[common], help="run the whole acceptance grid")
    return parser


def _evaluate(point: GridPoint, threshold: int) -> CongruenceReport:
    method = Method(point.method) if point.method else None
    return verify(point.target, point.param_dict, method, threshold)


def _run_points(points: Sequence[GridPoint], settings: Settings) -> List[CongruenceReport]:
    evaluate = partial(_evaluate, threshold=settings.naive_threshold)
    if settings.jobs == 1 or len(points) < 2:
        return [evaluate(p) for p in points]
    logger.info(f"evaluating {len(points)} points on {settings.jobs} processes")
    with ProcessPoolExecutor(max_workers=settings.jobs) as pool:
        # map() yields in submission order
        return list(pool.map(evaluate, points))


def _verify_points(args: argparse.Namespace, settings: Settings) -> List[GridPoint]:
    if args.command == "selftest" or args.target == "all":
        return load_grid(args.grid, max_n=settings.max_n)

    params: List[Tuple[str, Any]] = [
        (flag, getattr(args, flag)) for flag in PARAM_FLAGS if getattr(args, flag) is not None
    ]
    if params:
        return [GridPoint(args.target, tuple(params), args.method)]
    points = load_grid(args.grid, max_n=settings.max_n, target=args.target)
    if not points:
        raise UsageError(f"no parameters given and no grid points for {args.target!r}")
    if args.method:
        points = [GridPoint(p.target, p.params, args.method) for p in points]
    return points


def _parse_filter(raw: str) -> CoprimalityFilter:
    try:
        primes = [int(p) for p in raw.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"--filter expects comma-separated integers, not {raw!r}") from None
    return CoprimalityFilter.of(primes)


def _fast_triple(
    N: int, sign: SignPattern, filter_: CoprimalityFilter, m: int  # noqa: N803
) -> Residue:
    """Fast path for a `sum triple` request, when the request is in its domain."""
    f = factorize(m)
    doubling, rest = divmod(N, m)
    if rest or doubling & (doubling - 1):
        raise UsageError(f"the fast path needs --n = 2^r0 * --mod, got {N} and {m}")
    if filter_.admitted(1, N) != CoprimalityFilter.for_factorization(f).admitted(1, N):
        raise UsageError(f"the fast path needs --filter to match the primes of {m}")
    evaluator = (
        triple_sum_fast_alternating
        if sign is SignPattern.ALTERNATING_FIRST
        else triple_sum_fast_uniform
    )
    return evaluator(f) * doubling


def _sum_document(args: argparse.Namespace) -> Dict:
    params: Dict[str, Any] = {"n": args.n}
    if args.kind in ("progression", "cube", "halfcube"):
        f: Factorization = factorize(args.n)
        if args.kind == "progression":
            params.update(x=args.x, mult=args.mult)
            value = progression_reciprocal_sum(args.x, args.mult, f)
            return value_document(args.kind, params, value)
        evaluator = signed_cube_sum if args.kind == "cube" else half_cube_sum
        return value_document(args.kind, params, evaluator(f))

    if args.mod is None:
        raise UsageError(f"`sum {args.kind}` needs --mod")
    filter_ = _parse_filter(args.filter)
    params.update(mod=args.mod, filter=filter_)
    if args.kind == "kfold":
        params["k"] = args.k
        value = kfold_sum_naive(args.k, args.n, filter_, args.mod)
        return value_document(args.kind, params, value)

    sign = SignPattern(args.sign)
    params["sign"] = sign.value
    method = Method(args.method)
    naive = fast = None
    if method in (Method.FAST, Method.BOTH):
        fast = _fast_triple(args.n, sign, filter_, args.mod)
    if method in (Method.NAIVE, Method.BOTH):
        naive = triple_sum_naive(args.n, sign, filter_, args.mod)
    agree = None if method is not Method.BOTH else naive == fast
    value = naive if naive is not None else fast
    return value_document(args.kind, params, value, method.value, agree)  # type: ignore


def _bernoulli_document(args: argparse.Namespace) -> Dict:
    if args.k < 0:
        raise UsageError(f"k must be >= 0, not {args.k}")
    if args.mod is None:
        return value_document("bernoulli", {"k": args.k}, bernoulli(args.k))
    value = bernoulli_mod(args.k, args.mod)
    return value_document("bernoulli", {"k": args.k, "mod": args.mod}, value)


def _configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s"
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code.

    Args:
        argv: arguments without the program name; defaults to sys.argv.

    Returns:
        0 when every report passes, 1 on a failed report or evaluation error,
        2 on bad usage.
    """
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    try:
        settings = Settings.load(
            {
                "naive-threshold": args.naive_threshold,
                "max-n": args.max_n,
                "jobs": args.jobs,
                "format": args.format,
            }
        )
    except ConfigError as e:
        logger.error(e)
        return EXIT_USAGE
    if not settings.is_valid:
        return EXIT_USAGE

    try:
        if args.command in ("verify", "selftest"):
            reports = _run_points(_verify_points(args, settings), settings)
            document = report_document(reports)
            sys.stdout.write(render(document, settings.format))
            return EXIT_OK if document["passed"] else EXIT_FAILED
        if args.command == "sum":
            document = _sum_document(args)
        else:
            document = _bernoulli_document(args)
    except HarmonicSumsError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILED
    except (ConfigError, ValueError) as e:
        # usage errors and bad verifier parameters
        logger.error(e)
        return EXIT_USAGE

    sys.stdout.write(render(document, settings.format))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
