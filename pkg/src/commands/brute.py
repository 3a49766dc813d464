"""`brute`: exhaustive oracles for both equations."""

import argparse

from src.commands.base import Command, CommandOutcome, Rows, int_list
from src.core.config import Settings
from src.core.errors import InvalidInputError
from src.core.sharding import ShardConfig
from src.schemas.scans import BaseSolutions, BruteReport
from src.services.cfrac_service import ContinuedFractionService
from src.services.scan_service import ScanService


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int_list, required=True, help="Comma-separated primes")
    parser.add_argument("--x-max", type=int, help="Bound on X for (X^q - 1)(Y^q - 1) = Z^q")
    parser.add_argument("--y-max", type=int, help="Bound on Y for (X^q - 1)(Y^q - 1) = Z^q")
    parser.add_argument("--b", type=int_list, help="Bases for (2^k - 1)(b^k - 1) = y^q")
    parser.add_argument("--k-max", type=int, help="Bound on k (default 60)")


def run(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    if args.y_max is None and args.b is None:
        raise InvalidInputError("brute needs --y-max (XYZ search) or --b (equation search)")

    shards = ShardConfig.from_settings(settings)
    report = BruteReport()
    parameters: dict[str, object] = {"q": sorted(args.q)}
    if args.y_max is not None:
        x_max = args.x_max or args.y_max
        cfrac = ContinuedFractionService(shards)
        report.triples = {q: cfrac.brute_search_xyz(q, x_max, args.y_max) for q in sorted(set(args.q))}
        parameters.update(x_max=x_max, y_max=args.y_max)
    if args.b is not None:
        k_max = args.k_max or settings.default_k_max
        scans = ScanService(shards=shards, valuation_cap=settings.valuation_cap)
        report.bases = [
            BaseSolutions(b=b, solutions=scans.brute_force_equation(b, args.q, k_max)) for b in args.b
        ]
        parameters.update(b=args.b, k_max=k_max)

    violations = [f"q={q}: {triples}" for q, triples in report.triples.items() if triples]
    violations.extend(f"b={entry.b}: {entry.solutions}" for entry in report.bases if entry.solutions)
    return CommandOutcome(payload=report, violations=violations, extra_parameters=parameters)


def rows(report: BruteReport) -> Rows:
    body: list[list[object]] = [["xyz", q, t.X, t.Y, t.Z] for q, triples in report.triples.items() for t in triples]
    body.extend(["equation", s.q, entry.b, s.k, s.y] for entry in report.bases for s in entry.solutions)
    return ["oracle", "q", "X_or_b", "Y_or_k", "Z_or_y"], body


def summary(report: BruteReport) -> list[str]:
    lines = [f"q={q}: {len(triples)} triples" for q, triples in report.triples.items()]
    lines.extend(f"b={entry.b}: {len(entry.solutions)} solutions" for entry in report.bases)
    return lines


command = Command(
    name="brute",
    help="Brute-force oracles (expected to find nothing)",
    add_arguments=add_arguments,
    run=run,
    rows=rows,
    summary=summary,
)
