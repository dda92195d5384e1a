"""Order-stable fan-out of independent trials over worker processes."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

import numpy as np


def default_threads() -> int:
    return os.cpu_count() or 1


def map_trials(
    func: Callable[..., np.ndarray],
    trials: int,
    threads: int = 1,
    args: tuple = (),
) -> np.ndarray:
    """Evaluate ``func(indices, *args)`` over contiguous chunks of ``range(trials)``.

    ``func`` returns one row per index.  Results come back in index order,
    so the aggregate is identical for any ``threads``; every trial must seed
    itself from its own index.
    """
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    indices = np.arange(trials)
    if threads == 1 or trials < 2:
        return func(indices, *args)
    chunks = [c for c in np.array_split(indices, min(threads * 4, trials)) if c.size]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(func, chunks, *[[a] * len(chunks) for a in args]))
    return np.concatenate(parts)
