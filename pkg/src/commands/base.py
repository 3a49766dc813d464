"""Shared pieces of the subcommands: registration, argument types, outcomes."""

import argparse
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

from pydantic import BaseModel

from src.core.config import Settings


@dataclass
class CommandOutcome:
    """Result of a subcommand before it is wrapped into a run record."""

    payload: BaseModel
    violations: list[str] = field(default_factory=list)
    extra_parameters: dict[str, Any] = field(default_factory=dict)


Rows = tuple[list[str], list[Sequence[Any]]]


@dataclass
class Command:
    """A subcommand, registered with the top-level parser like a router."""

    name: str
    help: str
    add_arguments: Callable[[argparse.ArgumentParser], None]
    run: Callable[[argparse.Namespace, Settings], CommandOutcome]
    rows: Callable[[Any], Rows]
    summary: Callable[[Any], list[str]]


def int_list(value: str) -> list[int]:
    """Parse '3,5,7' into [3, 5, 7]."""
    try:
        items = [int(part) for part in value.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {value!r}") from e
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return items


def int_range(value: str) -> range:
    """Parse '7' or '2..100' (inclusive) into a range."""
    try:
        if ".." in value:
            lo, hi = (int(part) for part in value.split("..", 1))
        else:
            lo = hi = int(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {value!r}") from e
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {value!r}")
    return range(lo, hi + 1)


def big_int(value: str) -> int:
    """Parse an integer of any size, allowing '10**6' and '1e6' shorthands."""
    text = value.strip().replace("_", "")
    try:
        if "**" in text:
            base, exponent = text.split("**", 1)
            return int(base) ** int(exponent)
        if "e" in text.lower():
            mantissa, exponent = text.lower().split("e", 1)
            return int(mantissa) * 10 ** int(exponent)
        return int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected an integer, got {value!r}") from e
