"""Power-split grids and the worker pool shared by the sweeps.

Each user's budget is split by fractions (f_u, f_c) on the triangle f_u + f_c <= 1:
pu = f_u * P, p_coop = f_c * P, p_private = (1 - f_u - f_c) * P. Work is cut into ordered
blocks, mapped over a thread pool and merged after join, so results never depend on
scheduling.
"""
from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

import numpy as np

from secrecy_regions.config import settings
from secrecy_regions.schemas.channel import GaussianChannel

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def user_fractions(steps: int, *, private_power: bool = True) -> np.ndarray:
    """(f_u, f_c, f_private) rows for one user; without private power f_private is always 0."""
    n = steps - 1
    rows = []
    for i in range(steps):
        if private_power:
            for j in range(steps - i):
                rows.append((i / n, j / n, (n - i - j) / n))
        else:
            rows.append((i / n, (n - i) / n, 0.0))
    return np.array(rows, dtype=float)


def split_grid(ch: GaussianChannel, steps: int, *, private_power: bool = True) -> np.ndarray:
    """All split pairs as an (S, 6) array of (pu1, p12, p10, pu2, p21, p20)."""
    f = user_fractions(steps, private_power=private_power)
    n = f.shape[0]
    first = np.repeat(f * ch.p1, n, axis=0)
    second = np.tile(f * ch.p2, (n, 1))
    return np.hstack([first, second])


def blocks(n: int, size: int) -> list[slice]:
    size = max(1, size)
    return [slice(i, min(i + size, n)) for i in range(0, n, size)]


def fan_out(fn: Callable[[T], R], items: Sequence[T], workers: int | None = None) -> list[R]:
    """Ordered parallel map; a single worker (or item) runs inline."""
    workers = workers or settings.worker_count
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))
