"""Order-preserving map over independent work items, optionally in worker processes."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

from sumrank import config

T = TypeVar("T")


def resolve_workers(workers: int | None) -> int:
    return max(1, config.LIMITS.workers if workers is None else int(workers))


def pmap(fn: Callable[..., T], items: Sequence[tuple], workers: int | None = None) -> list[T]:
    """[fn(*item) for item in items]; with workers > 1 the items run in a process pool.

    Results come back in input order, so reductions over them do not depend on
    the worker count.
    """
    workers = resolve_workers(workers)
    if workers == 1 or len(items) <= 1:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futures = [ex.submit(fn, *it) for it in items]
        return [f.result() for f in futures]


def chunk_ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
