"""`scan`: exceptional (b, q) pairs of the prime-chain engine."""

import argparse
from typing import Any

from src.commands.base import Command, CommandOutcome, Rows, big_int, int_list
from src.core import claims
from src.core.config import Settings
from src.core.sharding import ShardConfig
from src.schemas.scans import ExceptionalPair, ScanReport
from src.services.chain_service import ChainEngine
from src.services.scan_service import ScanService


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--b-max", type=big_int, help="Exclusive bound on odd b (default from settings)")
    parser.add_argument("--q", type=int_list, help="Comma-separated odd primes (default 3,5,7,11,13,17,19)")


def published_violations(pairs: list[ExceptionalPair], b_max: int, q_set: list[int]) -> list[str]:
    """Differences from the published table inside the range it covers."""
    covered = min(b_max, claims.EXCEPTIONAL_TABLE_B_MAX)
    violations = []
    for q in sorted(set(q_set) & set(claims.EXCEPTIONAL_TABLE)):
        expected = {b for b in claims.EXCEPTIONAL_TABLE[q] if b < covered}
        found = {pair.b for pair in pairs if pair.q == q and pair.b < covered}
        if found != expected:
            violations.append(
                f"q={q}: found {sorted(found)}, published {sorted(expected)} "
                f"(missing {sorted(expected - found)}, extra {sorted(found - expected)})"
            )
    return violations


def run(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    b_max = args.b_max or settings.default_b_max
    q_set = args.q or settings.default_q_set
    shards = ShardConfig.from_settings(settings)
    service = ScanService(ChainEngine(settings.valuation_cap), shards, settings.valuation_cap)
    pairs = service.exceptional_pair_scan(b_max, q_set)
    report = ScanReport[ExceptionalPair](
        kind="exceptional-pairs",
        parameters={"b_max": b_max, "q_set": sorted(q_set)},
        findings=pairs,
    )
    return CommandOutcome(
        payload=report,
        violations=published_violations(pairs, b_max, q_set),
        extra_parameters={"b_max": b_max, "q": sorted(q_set), "shard_count": shards.shard_count},
    )


def rows(report: ScanReport[Any]) -> Rows:
    header = ["q", "b", "first_unchained", "p", "r", "needed", "available", "reason"]
    body = [
        [
            pair.q,
            pair.b,
            pair.blocking.first_unchained,
            pair.blocking.p,
            pair.blocking.r,
            pair.blocking.needed,
            pair.blocking.available,
            pair.blocking.reason,
        ]
        for pair in report.findings
    ]
    return header, body


def summary(report: ScanReport[Any]) -> list[str]:
    by_q: dict[int, list[int]] = {}
    for pair in report.findings:
        by_q.setdefault(pair.q, []).append(pair.b)
    lines = [f"exceptional pairs for b < {report.parameters['b_max']}:"]
    for q in report.parameters["q_set"]:
        lines.append(f"  q={q}: {by_q.get(q, [])}")
    return lines


command = Command(
    name="scan",
    help="List the (b, q) pairs the prime chain cannot settle",
    add_arguments=add_arguments,
    run=run,
    rows=rows,
    summary=summary,
)
