"""`cfrac`: continued fractions of q-th roots and the cubic convergent check."""

import argparse

from src.commands.base import Command, CommandOutcome, Rows, big_int, int_range
from src.core.config import Settings
from src.core.errors import InvalidInputError
from src.core.sharding import ShardConfig
from src.schemas.cfrac import CfracReport
from src.schemas.common import Verdict
from src.services.cfrac_service import ContinuedFractionService


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=big_int, help="Radicand N of N^(1/degree)")
    parser.add_argument("--degree", type=int, default=3, help="Root degree (default 3)")
    parser.add_argument("--count", type=int, default=20, help="Partial quotients to compute (default 20)")
    parser.add_argument("--x", type=int_range, help="X or A..B for the cubic convergent check")
    parser.add_argument("--y-limit", type=big_int, help="Largest denominator for the cubic check (default 10**6)")


def published_violations(report: CfracReport) -> list[str]:
    violations = [f"convergent {c.h}/{c.k} failed certification" for c in report.convergents if not c.certified]
    for check in report.cubic:
        if check.verdict is Verdict.SOLUTION_FOUND:
            violations.append(f"X={check.X}: solutions {check.solutions or check.direct_solutions}")
    return violations


def run(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    if args.n is None and args.x is None:
        raise InvalidInputError("cfrac needs --n (expansion) or --x (cubic check)")

    service = ContinuedFractionService(ShardConfig.from_settings(settings))
    report = CfracReport()
    parameters: dict[str, object] = {}
    if args.n is not None:
        report.expansion = service.cf_expand(args.n, args.degree, args.count)
        report.convergents = service.convergents(report.expansion)
        parameters.update(n=str(args.n), degree=args.degree, count=args.count)
    if args.x is not None:
        y_limit = args.y_limit or settings.default_y_limit
        report.cubic = [service.cubic_convergent_check(X, y_limit) for X in args.x]
        parameters.update(x=[args.x.start, args.x.stop - 1], y_limit=y_limit)

    return CommandOutcome(payload=report, violations=published_violations(report), extra_parameters=parameters)


def rows(report: CfracReport) -> Rows:
    if report.cubic:
        header = ["X", "y_limit", "convergents_examined", "candidates_tested", "solutions", "partial", "verdict"]
        return header, [
            [c.X, c.y_limit, c.convergents_examined, c.candidates_tested, len(c.solutions), c.partial, c.verdict.value]
            for c in report.cubic
        ]
    return ["index", "a", "h", "k", "side"], [
        [c.index, a, c.h, c.k, c.side.value]
        for c, a in zip(report.convergents, report.expansion.quotients if report.expansion else [])
    ]


def summary(report: CfracReport) -> list[str]:
    lines = []
    if report.expansion is not None:
        e = report.expansion
        lines.append(f"{e.radicand}^(1/{e.degree}) = {e.quotients}{' (exact)' if e.terminated else ''}")
        lines.extend(f"  {c.h}/{c.k} {c.side.value}" for c in report.convergents)
    for c in report.cubic:
        lines.append(f"X={c.X}: {c.verdict.value}, {c.convergents_examined} convergents up to {c.y_limit}; {c.note}")
    return lines


command = Command(
    name="cfrac",
    help="Continued fractions of q-th roots and the q = 3 convergent check",
    add_arguments=add_arguments,
    run=run,
    rows=rows,
    summary=summary,
)
