"""Replicate-parallel map with deterministic results.

Each work item is self-contained (it derives its own substream), so the
result list depends only on the argument list, never on the worker
count.  Workers are processes (fork) because the per-replicate work is
CPU-bound numpy + Python.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def effective_workers(workers: int | None) -> int:
    """Resolve the worker count: explicit value, else PAV_THREADS, else 1."""
    if workers is None:
        env = os.environ.get("PAV_THREADS", "")
        workers = int(env) if env.strip() else 1
    return max(1, int(workers))


def replicate_map(fn, items, workers: int | None = 1) -> list:
    """Apply fn to each item, optionally across processes.

    Results are returned in item order, so aggregation downstream is
    independent of scheduling.
    """
    items = list(items)
    workers = effective_workers(workers)
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    import multiprocessing as mp

    ctx = mp.get_context("fork")
    chunk = max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
        return list(pool.map(fn, items, chunksize=chunk))
