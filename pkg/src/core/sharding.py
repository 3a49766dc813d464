"""Deterministic data-parallel execution over ordered shards."""

from __future__ import annotations

import logging
import multiprocessing as mp
import time
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING, TypeVar

if TYPE_CHECKING:
    from src.core.config import Settings

logger = logging.getLogger(__name__)

S = TypeVar("S")
R = TypeVar("R")

# Thresholds for log levels (in seconds)
SLOW_SHARD_THRESHOLD_S = 30
VERY_SLOW_SHARD_THRESHOLD_S = 300


@dataclass
class ShardConfig:
    """Configuration for sharded scans."""

    jobs: int = 1
    shards_per_job: int = 4

    @classmethod
    def from_settings(cls, settings: "Settings | None" = None) -> "ShardConfig":
        """Create config from toolkit settings (the cached settings when omitted)."""
        from src.core.config import get_settings

        settings = settings or get_settings()
        return cls(jobs=settings.jobs, shards_per_job=settings.shards_per_job)

    @property
    def shard_count(self) -> int:
        """Total shards a range is cut into."""
        return self.jobs * self.shards_per_job


def split_range(start: int, stop: int, shards: int) -> list[tuple[int, int]]:
    """Cut [start, stop) into at most `shards` contiguous, ordered, non-empty pieces."""
    if stop <= start:
        return []
    shards = max(1, min(shards, stop - start))
    size, extra = divmod(stop - start, shards)
    pieces = []
    lo = start
    for i in range(shards):
        hi = lo + size + (1 if i < extra else 0)
        pieces.append((lo, hi))
        lo = hi
    return pieces


def _timed(worker: Callable[[S], R], shard: S) -> tuple[R, float]:
    started = time.perf_counter()
    result = worker(shard)
    return result, time.perf_counter() - started


def _log_shard(shard: object, elapsed: float) -> None:
    msg = f"shard {shard} finished in {elapsed:.2f}s"
    if elapsed > VERY_SLOW_SHARD_THRESHOLD_S:
        logger.warning(f"VERY SLOW SHARD: {msg}")
    elif elapsed > SLOW_SHARD_THRESHOLD_S:
        logger.info(f"SLOW SHARD: {msg}")
    else:
        logger.debug(msg)


class _TimedWorker:
    """Picklable wrapper timing a top-level worker function."""

    def __init__(self, worker: Callable[[S], R]) -> None:
        self.worker = worker

    def __call__(self, shard: S) -> tuple[R, float]:
        return _timed(self.worker, shard)


def map_shards(worker: Callable[[S], R], shards: Sequence[S], jobs: int = 1) -> Iterator[R]:
    """Apply a pure worker to every shard, yielding results in shard order.

    With jobs == 1 everything runs in-process. Otherwise a process pool is
    used with an ordered imap, so the merged output never depends on the
    worker count or on completion order. The worker must be a module-level
    function.

    Args:
        worker: Pure, module-level function of one shard.
        shards: Ordered shard descriptions (picklable).
        jobs: Worker processes.

    Yields:
        Worker results in the order of `shards`.
    """
    timed = _TimedWorker(worker)
    if jobs <= 1 or len(shards) <= 1:
        for shard in shards:
            result, elapsed = timed(shard)
            _log_shard(shard, elapsed)
            yield result
        return

    with mp.Pool(processes=jobs) as pool:
        for shard, (result, elapsed) in zip(shards, pool.imap(timed, shards)):
            _log_shard(shard, elapsed)
            yield result


def merge_ordered(chunks: Iterable[list[R]]) -> list[R]:
    """Concatenate per-shard result lists (already in canonical order)."""
    merged: list[R] = []
    for chunk in chunks:
        merged.extend(chunk)
    return merged
