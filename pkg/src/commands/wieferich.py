"""`wieferich`: odd primes p with p^2 | 2^(p-1) - 1."""

import argparse
from typing import Any

from src.commands.base import Command, CommandOutcome, Rows, big_int
from src.core import claims
from src.core.arith import ModulusSchedule
from src.core.config import Settings
from src.core.sharding import ShardConfig
from src.schemas.scans import ScanReport, WieferichFinding
from src.services.scan_service import ScanService


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p-max", type=big_int, help="Exclusive bound on p (default 2828)")
    parser.add_argument(
        "--schedule",
        choices=[s.value for s in ModulusSchedule],
        default=ModulusSchedule.LADDER.value,
        help="Modulus schedule for the valuations",
    )


def published_violations(findings: list[WieferichFinding], p_max: int) -> list[str]:
    covered = min(p_max, claims.WIEFERICH_P_MAX)
    expected = {(p, v) for p, v in claims.WIEFERICH_FINDINGS if p < covered}
    found = {(f.p, f.valuation) for f in findings if f.p < covered}
    if found != expected:
        return [f"Wieferich primes below {covered}: found {sorted(found)}, published {sorted(expected)}"]
    return []


def run(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    p_max = args.p_max or settings.default_wieferich_p_max
    shards = ShardConfig.from_settings(settings)
    service = ScanService(shards=shards, valuation_cap=settings.valuation_cap)
    findings = service.wieferich_scan(p_max, ModulusSchedule(args.schedule))
    report = ScanReport[WieferichFinding](kind="wieferich", parameters={"p_max": p_max}, findings=findings)
    return CommandOutcome(
        payload=report,
        violations=published_violations(findings, p_max),
        extra_parameters={"p_max": p_max, "shard_count": shards.shard_count},
    )


def rows(report: ScanReport[Any]) -> Rows:
    return ["p", "valuation"], [[f.p, f.valuation] for f in report.findings]


def summary(report: ScanReport[Any]) -> list[str]:
    found = ", ".join(f"p={f.p} (nu={f.valuation})" for f in report.findings) or "none"
    return [f"Wieferich primes below {report.parameters['p_max']}: {found}"]


command = Command(
    name="wieferich",
    help="Scan for base-2 Wieferich primes",
    add_arguments=add_arguments,
    run=run,
    rows=rows,
    summary=summary,
)
