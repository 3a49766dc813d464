"""`fermatq`: maximum of nu_p(b^(p-1) - 1) over a (b, p) box."""

import argparse
from pathlib import Path

from src.commands.base import Command, CommandOutcome, Rows, big_int
from src.core import claims
from src.core.config import Settings
from src.core.sharding import ShardConfig
from src.schemas.scans import FermatQuotientReport
from src.services.scan_service import ScanService


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--b-max", type=big_int, help="Exclusive bound on odd b (default 100000)")
    parser.add_argument("--p-max", type=big_int, help="Exclusive bound on p (default 500)")
    parser.add_argument("--checkpoint", type=Path, help="Resume file, written after every completed prime")


def published_violations(report: FermatQuotientReport) -> list[str]:
    in_range = report.b_max <= claims.FERMAT_QUOTIENT_B_MAX and report.p_max <= claims.FERMAT_QUOTIENT_P_MAX
    if in_range and not report.within_bound:
        return [f"max nu_p(b^(p-1) - 1) = {report.max_valuation} exceeds {report.published_bound}"]
    return []


def run(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    b_max = args.b_max or settings.default_fermat_b_max
    p_max = args.p_max or settings.default_fermat_p_max
    shards = ShardConfig.from_settings(settings)
    service = ScanService(shards=shards, valuation_cap=settings.valuation_cap)
    report = service.fermat_quotient_scan(b_max, p_max, args.checkpoint)
    return CommandOutcome(
        payload=report,
        violations=published_violations(report),
        extra_parameters={
            "b_max": b_max,
            "p_max": p_max,
            "checkpoint": str(args.checkpoint) if args.checkpoint else None,
        },
    )


def rows(report: FermatQuotientReport) -> Rows:
    return ["b", "p", "valuation"], [[w.b, w.p, w.valuation] for w in report.witnesses]


def summary(report: FermatQuotientReport) -> list[str]:
    lines = [
        f"max nu_p(b^(p-1) - 1) over odd b < {report.b_max}, p < {report.p_max}: "
        f"{report.max_valuation} (published bound {report.published_bound})",
        f"primes scanned: {report.primes_scanned} ({report.primes_resumed} resumed)",
    ]
    lines.extend(f"  b={w.b} p={w.p}" for w in report.witnesses)
    return lines


command = Command(
    name="fermatq",
    help="Maximum Fermat-quotient valuation over a (b, p) box",
    add_arguments=add_arguments,
    run=run,
    rows=rows,
    summary=summary,
)
