"""`threshold`: smallest q from which the equation has no solution."""

import argparse

from pydantic import BaseModel, ConfigDict, Field

from src.commands.base import Command, CommandOutcome, Rows, int_list
from src.core.config import Settings
from src.schemas.scans import ThresholdRow
from src.services.chain_service import no_solution_threshold


class ThresholdTable(BaseModel):
    """Thresholds in the order the bases were given."""

    model_config = ConfigDict(from_attributes=True)

    rows: list[ThresholdRow] = Field(default_factory=list, description="One row per base")


def add_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--b", type=int_list, required=True, help="Comma-separated odd bases")


def run(args: argparse.Namespace, settings: Settings) -> CommandOutcome:
    table = ThresholdTable(rows=[ThresholdRow(b=b, threshold=no_solution_threshold(b)) for b in args.b])
    return CommandOutcome(payload=table, extra_parameters={"b": args.b})


def rows(table: ThresholdTable) -> Rows:
    return ["b", "threshold"], [[r.b, r.threshold] for r in table.rows]


def summary(table: ThresholdTable) -> list[str]:
    return [f"b={r.b}: no solution for primes q >= {r.threshold}" for r in table.rows]


command = Command(
    name="threshold",
    help="Smallest prime q > 2 sqrt(2b)",
    add_arguments=add_arguments,
    run=run,
    rows=rows,
    summary=summary,
)
