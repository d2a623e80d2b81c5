"""Deterministic chunked parallelism.

Work is always cut into the same fixed-size chunks whatever the thread count,
and every chunk is reduced in the same order, so results are bit-identical
for any ``QUATSAMP_THREADS``.  BLAS is pinned to one thread while chunks run,
keeping its own reduction order fixed as well.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager

from threadpoolctl import threadpool_limits

CHUNK = 512


def thread_count() -> int:
    raw = os.environ.get("QUATSAMP_THREADS", "").strip()
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return max(1, os.cpu_count() or 1)


@contextmanager
def single_threaded_blas():
    with threadpool_limits(limits=1, user_api="blas"):
        yield


def chunk_slices(n: int, chunk: int = CHUNK):
    return [slice(s, min(s + chunk, n)) for s in range(0, n, chunk)]


def map_chunks(fn, n: int, chunk: int = CHUNK):
    """Apply ``fn(slice)`` over fixed chunks of ``range(n)``; results in order."""
    slices = chunk_slices(n, chunk)
    workers = min(thread_count(), len(slices))
    if workers <= 1:
        return [fn(s) for s in slices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, slices))
