"""Enumeration of all increasing events on {0,1}^n, n <= 6.

Masks are built by splitting on the last coordinate: an up-set on n
coordinates is a pair ``(lo, hi)`` of up-sets on n - 1 coordinates with
``lo`` contained in ``hi``, and its bit-vector is ``lo | hi << 2**(n-1)``.
Iterating ``hi`` outermost and ``lo`` innermost, both ascending, yields the
masks in ascending numeric order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .cube import IncreasingEvent
from .errors import DimensionOutOfRange

MAX_ENUM_DIM = 6


@dataclass(frozen=True)
class EnumConfig:
    n: int
    include_empty: bool = False
    include_full: bool = True

    def __post_init__(self):
        if not isinstance(self.n, int) or not 0 <= self.n <= MAX_ENUM_DIM:
            raise DimensionOutOfRange(f"enumeration needs 0 <= n <= {MAX_ENUM_DIM}, got {self.n!r}")


@lru_cache(maxsize=None)
def _all_masks(n: int) -> np.ndarray:
    if n == 0:
        return np.array([0, 1], dtype=np.uint64)
    prev = _all_masks(n - 1)
    shift = np.uint64(1 << (n - 1))
    chunks = []
    for hi in prev:
        lo = prev[(prev & ~hi) == 0]
        chunks.append(lo | (hi << shift))
    out = np.concatenate(chunks)
    out.setflags(write=False)
    return out


def increasing_masks(cfg: EnumConfig) -> np.ndarray:
    """All increasing-event bit-vectors for ``cfg``, ascending, as ``uint64``."""
    masks = _all_masks(cfg.n)
    lo = 0 if cfg.include_empty else 1
    hi = len(masks) if cfg.include_full else len(masks) - 1
    return masks[lo:hi]


def enumerate_increasing(
    cfg: EnumConfig, start: int = 0, stop: int | None = None
) -> Iterator[IncreasingEvent]:
    """Stream the increasing events of ``cfg`` with indices in ``[start, stop)``.

    Index ranges make the stream restartable and partitionable.
    """
    masks = increasing_masks(cfg)
    for bits in masks[start:stop]:
        yield IncreasingEvent._trusted(cfg.n, int(bits))


def count_increasing(n: int) -> int:
    """Dedekind number: comparable ordered pairs of (n-1)-dimensional up-sets."""
    if not isinstance(n, int) or not 0 <= n <= MAX_ENUM_DIM:
        raise DimensionOutOfRange(f"count needs 0 <= n <= {MAX_ENUM_DIM}, got {n!r}")
    if n == 0:
        return 2
    prev = _all_masks(n - 1)
    return int(sum(np.count_nonzero((prev & ~hi) == 0) for hi in prev))


def event_count(cfg: EnumConfig) -> int:
    return len(increasing_masks(cfg))


