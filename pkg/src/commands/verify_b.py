"""`verify-b`: per-base resolution for the listed small bases."""

import argparse

from pydantic import BaseModel, ConfigDict, Field

from src.commands.base import Command, CommandOutcome, Rows, int_list
from src.core import claims
from src.core.config import Settings
from src.schemas.common import Verdict
from src.schemas.scans import ResolutionReport
from src.services.chain_service import ChainEngine
from src.services.scan_service import ScanService


class ResolutionBatch(BaseModel):
    """Resolutions in the order the bases were given."""

    model_config = ConfigDict(from_attributes=True)

    resolutions: list[ResolutionReport] = Field(default_factory=list, description="One report per base")


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--b", type=int_list, help="Comma-separated bases (default: all listed bases)")
    parser.add_argument("--k-max", type=int, help="Exponent bound of the square-case oracle (default 60)")


def run(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    bases = args.b or list(claims.RESOLVED_BASES)
    k_max = args.k_max or settings.default_k_max
    service = ScanService(ChainEngine(settings.valuation_cap), valuation_cap=settings.valuation_cap)
    batch = ResolutionBatch(resolutions=[service.resolve_base(b, k_max) for b in bases])
    violations = [
        f"b={r.b}: {r.verdict.value}" for r in batch.resolutions if r.verdict is not Verdict.NO_SOLUTION
    ]
    violations.extend(
        f"b={r.b}: square case k={s.k}, y={s.y}" for r in batch.resolutions for s in r.square_case_solutions
    )
    return CommandOutcome(payload=batch, violations=violations, extra_parameters={"b": bases, "k_max": k_max})


def rows(batch: ResolutionBatch) -> Rows:
    header = ["b", "threshold", "remaining_q", "branch", "nu3_exact_minimum", "verdict"]
    return header, [
        [r.b, r.threshold, " ".join(map(str, r.remaining_q)), r.branch or "", r.nu3_exact_minimum, r.verdict.value]
        for r in batch.resolutions
    ]


def summary(batch: ResolutionBatch) -> list[str]:
    lines = []
    for r in batch.resolutions:
        lines.append(f"b={r.b}: {r.verdict.value}")
        lines.extend(f"  {step.name}: {step.detail}" for step in r.steps)
        lines.extend(f"  discrepancy: {d}" for d in r.discrepancies)
    return lines


command = Command(
    name="verify-b",
    help="Resolve the listed small bases step by step",
    add_arguments=add_arguments,
    run=run,
    rows=rows,
    summary=summary,
)
