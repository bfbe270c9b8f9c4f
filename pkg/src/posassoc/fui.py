"""Measures realized as increasing functions of finitely many independent
Bernoulli variables.

The construction for a measure satisfying the lattice condition runs in two
steps.  First, with independent uniforms ``Z_1..Z_n``, set ``X_i = 1`` iff
``Z_i > a(i, h)`` where ``h`` is the realized history ``X_1..X_{i-1}`` and
``a(i, h) = P(X_i = 0 | h)``.  Second, the finitely many events
``{Z_i > a}`` are replaced by a chain of Bernoullis whose running OR has the
same joint law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._kernels import pick_dtype
from .cube import IncreasingEvent, event_from_json, event_to_json, up_closure, Event
from .errors import (
    DimensionOutOfRange,
    MonotoneCompletionFailed,
    NotFkg,
    ParseError,
    TooManyUnderlying,
)
from .measures import (
    Measure,
    TableMeasure,
    as_rational,
    check_fkg,
    format_rational,
)

MAX_UNDERLYING = 20
RANDOM_MAX_UNDERLYING = 12


@dataclass(frozen=True)
class FuiRealization:
    """``X_i = 1`` iff ``(Y_1..Y_m)`` lies in the up-set ``f[i]``; ``Y_j ~ Ber(q[j])``."""

    m: int
    q: tuple[Fraction, ...]
    f: tuple[IncreasingEvent, ...]

    def __post_init__(self):
        q = tuple(as_rational(v) for v in self.q)
        if len(q) != self.m:
            raise ValueError(f"expected {self.m} Bernoulli parameters, got {len(q)}")
        if any(not 0 <= v <= 1 for v in q):
            raise ValueError("Bernoulli parameters must lie in [0, 1]")
        for fi in self.f:
            if not isinstance(fi, IncreasingEvent):
                raise TypeError("structure functions must be IncreasingEvent instances")
            if fi.n != self.m:
                raise ValueError(f"structure function on {fi.n} bits, expected {self.m}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "f", tuple(self.f))

    @property
    def n(self) -> int:
        return len(self.f)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "q": [format_rational(v) for v in self.q],
            "f": [event_to_json(fi) for fi in self.f],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "FuiRealization":
        try:
            return cls(
                obj["m"],
                tuple(as_rational(v) for v in obj["q"]),
                tuple(event_from_json(e) for e in obj["f"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed realization: {exc}") from exc


@dataclass(frozen=True)
class ThresholdTable:
    """``alpha[i][h]`` is the threshold for coordinate ``i + 1`` after history ``h``.

    ``h`` encodes ``X_1..X_i`` little-endian.  ``positive[i][h]`` marks
    histories of positive probability; the others were filled in by
    monotone completion.
    """

    n: int
    alpha: tuple[tuple[Fraction, ...], ...]
    positive: tuple[tuple[bool, ...], ...]

    def is_monotone(self) -> bool:
        return _first_monotone_failure(self.alpha) is None


def _first_monotone_failure(alpha):
    for i, row in enumerate(alpha):
        for h in range(len(row)):
            for j in range(i):
                if not h >> j & 1 and row[h] < row[h | 1 << j]:
                    return i, h, h | 1 << j
    return None


def _history_masses(w: Sequence[Fraction], n: int) -> list[list[Fraction]]:
    """``masses[i][h]``: probability that ``X_1..X_i`` equals ``h``."""
    masses = [None] * (n + 1)
    masses[n] = list(w)
    for i in range(n - 1, -1, -1):
        upper = masses[i + 1]
        half = 1 << i
        masses[i] = [upper[h] + upper[h | half] for h in range(half)]
    return masses


def build_thresholds(m: Measure) -> ThresholdTable:
    violation = check_fkg(m)
    if violation is not None:
        raise NotFkg(violation)
    n = m.n
    masses = _history_masses(m.weights(), n)
    alpha, positive = [], []
    for i in range(n):
        size = 1 << i
        row: list[Fraction | None] = [None] * size
        pos = [False] * size
        for h in range(size):
            total = masses[i][h]
            if total > 0:
                row[h] = masses[i + 1][h] / total  # bit i clear: X_{i+1} = 0
                pos[h] = True
        # zero-probability histories: largest threshold among positive histories
        # above, else 0 (a default of 1 can exceed thresholds of histories below)
        for h in range(size):
            if pos[h]:
                continue
            above = [row[g] for g in range(size) if pos[g] and g & h == h]
            row[h] = max(above) if above else Fraction(0)
        alpha.append(tuple(row))
        positive.append(tuple(pos))
    failure = _first_monotone_failure(alpha)
    if failure is not None:
        i, lo, hi = failure
        raise MonotoneCompletionFailed(
            f"threshold for coordinate {i + 1} increases from history {lo:b} to {hi:b}"
        )
    return ThresholdTable(n, tuple(alpha), tuple(positive))


def chain_parameters(levels: Sequence[Fraction]) -> list[Fraction]:
    """Bernoulli parameters whose running OR realizes ``{Z > a}`` for each level.

    ``levels`` must be strictly decreasing and inside ``(0, 1)``.  The first
    ``j`` variables are all zero with probability ``levels[j - 1]``.
    """
    out = []
    prev = Fraction(1)
    for a in levels:
        out.append(1 - a / prev)
        prev = a
    return out


def discretize(t: ThresholdTable) -> FuiRealization:
    # per coordinate: the strictly decreasing interior thresholds
    chains = [sorted({a for a in row if 0 < a < 1}, reverse=True) for row in t.alpha]
    m = sum(len(c) for c in chains)
    if m > MAX_UNDERLYING:
        raise TooManyUnderlying(f"{m} underlying Bernoullis exceeds {MAX_UNDERLYING}")
    q: list[Fraction] = []
    offsets = []
    for c in chains:
        offsets.append(len(q))
        q.extend(chain_parameters(c))

    ys = np.arange(1 << m, dtype=np.int64)
    xs: list[np.ndarray] = []
    for i, row in enumerate(t.alpha):
        chain = chains[i]
        rank = {a: j + 1 for j, a in enumerate(chain)}
        # prefix[j] = Y_{i,1} or ... or Y_{i,j}
        prefix = [np.zeros(1 << m, dtype=bool)]
        for j in range(len(chain)):
            prefix.append(prefix[-1] | ((ys >> (offsets[i] + j)) & 1).astype(bool))
        prefix.append(np.ones(1 << m, dtype=bool))  # threshold 0: always on
        level = np.array(
            [0 if a == 1 else len(chain) + 1 if a == 0 else rank[a] for a in row], dtype=np.intp
        )
        hist = np.zeros(1 << m, dtype=np.intp)
        for j, xj in enumerate(xs):
            hist |= xj.astype(np.intp) << j
        stacked = np.stack(prefix)
        xs.append(stacked[level[hist], np.arange(1 << m)])
    f = tuple(IncreasingEvent(m, _bits_from_bool(x)) for x in xs)
    return FuiRealization(m, tuple(q), f)


def _bits_from_bool(x: np.ndarray) -> int:
    return int.from_bytes(np.packbits(x, bitorder="little").tobytes(), "little")


def _bool_from_bits(bits: int, size: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((size + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def pushforward(r: FuiRealization) -> TableMeasure:
    """Exact law of ``(X_1..X_n)`` under the realization."""
    m = r.m
    if m > MAX_UNDERLYING:
        raise TooManyUnderlying(f"{m} underlying Bernoullis exceeds {MAX_UNDERLYING}")
    dens = [v.denominator for v in r.q]
    L = math.prod(dens)
    dtype = pick_dtype(L)
    w = np.ones(1, dtype=dtype)
    for v, d in zip(r.q, dens):
        num = v.numerator
        w = np.concatenate([w * (d - num), w * num])
    image = np.zeros(1 << m, dtype=np.intp)
    for i, fi in enumerate(r.f):
        image |= _bool_from_bits(fi.bits, 1 << m).astype(np.intp) << i
    out = np.zeros(1 << r.n, dtype=dtype)
    np.add.at(out, image, w)
    return TableMeasure(r.n, tuple(Fraction(int(v), L) for v in out))


def footnote2_fixture(q1, q2, q3) -> FuiRealization:
    """``X_1 = Y_1 Y_2``, ``X_2 = Y_1 Y_3``, ``X_3 = Y_2 Y_3``."""
    f = tuple(IncreasingEvent.generated_by(3, [s]) for s in ((1, 2), (1, 3), (2, 3)))
    return FuiRealization(3, (as_rational(q1), as_rational(q2), as_rational(q3)), f)


class SplitMix64:
    """The SplitMix64 generator: portable, 64-bit state, seeded directly."""

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        return self.next() % k


def random_fui(n: int, m: int, seed: int) -> FuiRealization:
    """Deterministic random realization: ``q_j = a/d`` with ``2 <= d <= 16`` and
    ``0 < a < d``; each ``f_i`` is generated by 1 to 3 random subsets of ``[m]``."""
    if not 1 <= m <= RANDOM_MAX_UNDERLYING:
        raise DimensionOutOfRange(f"random_fui needs 1 <= m <= {RANDOM_MAX_UNDERLYING}")
    if n < 1:
        raise DimensionOutOfRange("random_fui needs n >= 1")
    rng = SplitMix64(seed)
    q = []
    for _ in range(m):
        d = 2 + rng.below(15)
        q.append(Fraction(1 + rng.below(d - 1), d))
    f = []
    for _ in range(n):
        gens = [rng.below(1 << m) for _ in range(1 + rng.below(3))]
        f.append(up_closure(Event.from_points(m, gens)))
    return FuiRealization(m, tuple(q), tuple(f))
