"""Process fan-out for independent exact computations; results keep input order."""

from __future__ import annotations

import os

THREADS_ENV = "PENCILFORGE_THREADS"


def worker_count(requested: int | None = None) -> int:
    """Requested count (default: cpu count), capped by PENCILFORGE_THREADS."""
    n = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            n = min(n, int(cap))
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {cap!r}") from None
    return max(1, n)


def pmap(fn, arglist, workers: int = 1) -> list:
    if workers <= 1 or len(arglist) <= 1:
        return [fn(*a) for a in arglist]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=min(workers, len(arglist))) as pool:
        futures = [pool.submit(fn, *a) for a in arglist]
        return [f.result() for f in futures]
