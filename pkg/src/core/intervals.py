"""Certified real comparisons on mpmath intervals with adaptive precision."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, TypeVar

from mpmath import iv, mp

from src.core.errors import PrecisionExhaustedError

if TYPE_CHECKING:
    from src.core.config import Settings

logger = logging.getLogger(__name__)

T = TypeVar("T")

Interval = Any  # mpmath.ctx_iv.ivmpf; mpmath ships no type information


@dataclass
class PrecisionConfig:
    """Configuration for adaptive precision."""

    start_bits: int = 128
    cap_bits: int = 4096

    @classmethod
    def from_settings(cls, settings: "Settings | None" = None) -> "PrecisionConfig":
        """Create config from toolkit settings (the cached settings when omitted)."""
        from src.core.config import get_settings

        settings = settings or get_settings()
        return cls(
            start_bits=settings.precision_start_bits,
            cap_bits=settings.precision_cap_bits,
        )

    def schedule(self) -> Iterator[int]:
        """Yield working precisions, doubling from start up to and including cap."""
        bits = self.start_bits
        while bits < self.cap_bits:
            yield bits
            bits *= 2
        yield self.cap_bits


@contextmanager
def working_precision(bits: int) -> Iterator[None]:
    """Temporarily set the interval context precision."""
    previous = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = previous


def lower(x: Interval) -> Any:
    """Lower endpoint of an interval as an exact mpf."""
    return mp.make_mpf(x._mpi_[0])


def upper(x: Interval) -> Any:
    """Upper endpoint of an interval as an exact mpf."""
    return mp.make_mpf(x._mpi_[1])


def certainly_less(x: Interval, y: Interval) -> bool | None:
    """Decide x < y; None when the intervals overlap."""
    if upper(x) < lower(y):
        return True
    if lower(x) >= upper(y):
        return False
    return None


def certainly_greater(x: Interval, y: Interval) -> bool | None:
    """Decide x > y; None when the intervals overlap."""
    return certainly_less(y, x)


def decide(predicate: Callable[[], bool | None], config: PrecisionConfig, what: str) -> bool:
    """Evaluate an interval predicate, doubling precision until it is decided.

    Args:
        predicate: Returns True/False when decided at the current precision,
            None when the intervals involved still overlap.
        config: Precision schedule.
        what: Description used in logs and in the exhaustion error.

    Returns:
        bool: The decided value.

    Raises:
        PrecisionExhaustedError: Still undecided at the cap.
    """
    for bits in config.schedule():
        with working_precision(bits):
            result = predicate()
        if result is not None:
            return result
        logger.debug("Undecided at %d bits: %s", bits, what)
    raise PrecisionExhaustedError(f"Undecided at {config.cap_bits} bits: {what}", cap_bits=config.cap_bits)


def refine(
    compute: Callable[[], T],
    check: Callable[[T], bool | None],
    config: PrecisionConfig,
    what: str,
) -> tuple[T, int, bool]:
    """Recompute a value until `check` decides a property of it.

    Returns:
        tuple: (value, bits, decided) at the first precision where check
        returned True or False.

    Raises:
        PrecisionExhaustedError: check stayed None up to the cap.
    """
    for bits in config.schedule():
        with working_precision(bits):
            value = compute()
            verdict = check(value)
        if verdict is not None:
            return value, bits, verdict
        logger.debug("Not yet decided at %d bits: %s", bits, what)
    raise PrecisionExhaustedError(f"Could not decide {what} up to {config.cap_bits} bits", cap_bits=config.cap_bits)
