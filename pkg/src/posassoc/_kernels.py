"""Vectorized exact probability sums over many events at once.

Weights are scaled to integers with a common denominator, so every comparison
in the scanners is an integer comparison.  ``int64`` is used when the caller's
magnitude bound fits; otherwise arrays fall back to Python ints (``object``).
"""

from __future__ import annotations

import numpy as np

INT64_LIMIT = 2**62


def pick_dtype(bound: int):
    return np.int64 if bound < INT64_LIMIT else object


class WeightLookup:
    """Maps event bit-vectors to the integer sum of their atom weights."""

    def __init__(self, n: int, weights: list[int], dtype=np.int64):
        self.n = n
        self.dtype = dtype
        size = 1 << n
        self.chunk = min(size, 16)
        self.tables = []
        for base in range(0, size, self.chunk):
            t = np.zeros(1, dtype=dtype)
            for j in range(self.chunk):
                t = np.concatenate([t, t + weights[base + j]])
            self.tables.append(t)
        self._low = np.uint64((1 << self.chunk) - 1)

    def __call__(self, masks: np.ndarray) -> np.ndarray:
        masks = np.asarray(masks, dtype=np.uint64)
        if len(self.tables) == 1:
            return self.tables[0][masks.astype(np.intp)]
        out = np.zeros(masks.shape, dtype=self.dtype)
        for k, t in enumerate(self.tables):
            idx = (masks >> np.uint64(k * self.chunk)) & self._low
            out = out + t[idx.astype(np.intp)]
        return out
