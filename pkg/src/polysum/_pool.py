"""Order-preserving process pool helpers shared by the scanning commands."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")

JOBS_ENV = "POLYSUM_JOBS"


def default_jobs() -> int:
    env = os.environ.get(JOBS_ENV)
    if env:
        jobs = int(env)
        if jobs < 1:
            raise ValueError(f"{JOBS_ENV} must be >= 1")
        return jobs
    return os.cpu_count() or 1


def chunk_ranges(lo: int, hi: int, jobs: int, per_job: int = 4) -> list[tuple[int, int]]:
    """Split ``[lo, hi]`` into contiguous inclusive ranges, in order."""
    if hi < lo:
        return []
    pieces = 1 if jobs <= 1 else jobs * per_job
    size = max(1, -(-(hi - lo + 1) // pieces))
    return [(s, min(s + size - 1, hi)) for s in range(lo, hi + 1, size)]


def parallel_map(fn: Callable[[T], R], items: Iterable[T], jobs: int) -> list[R]:
    """``list(map(fn, items))``, fanned out over ``jobs`` processes if > 1."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    items = list(items)
    if jobs == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def parallel_imap(fn: Callable[[T], R], items: Iterable[T], jobs: int) -> Iterator[R]:
    """Lazy, order-preserving variant of :func:`parallel_map`."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    items = list(items)
    if jobs == 1 or len(items) <= 1:
        for x in items:
            yield fn(x)
        return
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        yield from ex.map(fn, items)
