"""Process-pool helpers whose results never depend on the worker count.

Tasks are argument tuples for a module-level function.  Results are always
consumed in task order, so callers that split their work into ordered
chunks get the same answer with one worker or many.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

WORKERS_ENV = "POSASSOC_WORKERS"


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
        if value < 1:
            raise ValueError(f"{WORKERS_ENV} must be >= 1")
        return value
    return os.cpu_count() or 1


def run_all(func: Callable, tasks: Sequence[tuple], workers: int = 1) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [func(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, *t) for t in tasks]
        return [f.result() for f in futures]


def first_hit(func: Callable, tasks: Sequence[tuple], workers: int = 1):
    """First non-``None`` result in task order, or ``None``."""
    if workers <= 1 or len(tasks) <= 1:
        for t in tasks:
            hit = func(*t)
            if hit is not None:
                return hit
        return None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(func, *t) for t in tasks]
        for k, f in enumerate(futures):
            hit = f.result()
            if hit is not None:
                for later in futures[k + 1:]:
                    later.cancel()
                return hit
    return None
