"""Exhaustive exact scanners for correlation statements about increasing events.

* :func:`harris_criterion` compares independence of two increasing events
  under a nondegenerate product measure with disjointness of their affecting
  coordinates.
* :func:`pa_check` tests positive association over all pairs of increasing
  events.
* :func:`abc_scan` lists triples where ``AB|C`` and ``AC|B`` hold but ``B|C``
  fails, a pattern no measure built from finitely many independent
  Bernoullis can show.
* :func:`sahi_value`, :func:`sahi_polynomial` and :func:`sahi_scan` handle
  the symmetric three-event expression
  ``2P(ABC) - [P(AB)P(C) + P(AC)P(B) + P(BC)P(A)] + P(A)P(B)P(C)``.

All scans visit events in the ascending bit-vector order of
:mod:`posassoc.enumeration`, and report in that order regardless of the
worker count.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from . import parallel
from ._kernels import WeightLookup, pick_dtype
from .cube import IncreasingEvent, check_dim, event_to_json, z_set
from .enumeration import EnumConfig, increasing_masks
from .errors import DegenerateParameter, DimensionMismatch, DimensionOutOfRange, EmptyEventError
from .measures import (
    Measure,
    ProductMeasure,
    format_rational,
    integer_weights,
    is_independent,
    prob,
)
from .polynomial import Polynomial

PA_MAX_DIM = 5
ABC_MAX_DIM = 4
SAHI_MAX_DIM = 3


def _nonempty(*events: IncreasingEvent) -> None:
    for e in events:
        if e.bits == 0:
            raise EmptyEventError("events must be nonempty")


def _same_dim(n: int, *events: IncreasingEvent) -> None:
    for e in events:
        if e.n != n:
            raise DimensionMismatch(f"event dimension {e.n} != {n}")


def _frac_json(q: Fraction) -> str:
    return format_rational(q)


# ---------------------------------------------------------------------------
# independence criterion


class HarrisResult(NamedTuple):
    independent: bool
    z_disjoint: bool

    @property
    def agrees(self) -> bool:
        return self.independent == self.z_disjoint


def harris_criterion(m: ProductMeasure, A: IncreasingEvent, B: IncreasingEvent) -> HarrisResult:
    _same_dim(m.n, A, B)
    _nonempty(A, B)
    if any(p in (0, 1) for p in m.p):
        raise DegenerateParameter("all product parameters must lie strictly inside (0, 1)")
    return HarrisResult(
        independent=is_independent(m, A, B),
        z_disjoint=not (z_set(A) & z_set(B)),
    )


# ---------------------------------------------------------------------------
# positive association


@dataclass(frozen=True)
class PaViolation:
    A: IncreasingEvent
    B: IncreasingEvent
    prob_a: Fraction
    prob_b: Fraction
    prob_ab: Fraction

    def to_json(self) -> dict:
        return {
            "A": event_to_json(self.A),
            "B": event_to_json(self.B),
            "P(A)": _frac_json(self.prob_a),
            "P(B)": _frac_json(self.prob_b),
            "P(AB)": _frac_json(self.prob_ab),
        }


@dataclass(frozen=True)
class PaCheckResult:
    violation: PaViolation | None
    pairs_scanned: int

    @property
    def passed(self) -> bool:
        return self.violation is None


def _pa_rows(masks, weights, L, n, start, stop):
    lookup = WeightLookup(n, weights, pick_dtype(L * L))
    w1 = lookup(masks)
    for i in range(start, stop):
        wab = lookup(masks[i] & masks[i:])
        bad = np.asarray(L * wab < w1[i] * w1[i:], dtype=bool)
        if bad.any():
            return i, i + int(np.argmax(bad))
    return None


def _row_chunks(total_rows: int, cost, parts: int) -> list[tuple[int, int]]:
    """Split ``range(total_rows)`` into contiguous chunks of similar total cost."""
    costs = [cost(i) for i in range(total_rows)]
    target = sum(costs) / max(parts, 1)
    chunks, start, acc = [], 0, 0
    for i, c in enumerate(costs):
        acc += c
        if acc >= target and len(chunks) < parts - 1:
            chunks.append((start, i + 1))
            start, acc = i + 1, 0
    if start < total_rows:
        chunks.append((start, total_rows))
    return chunks


def pa_check(m: Measure, workers: int = 1) -> PaCheckResult:
    """Scan all unordered pairs of increasing events for a negative correlation.

    Returns the first violating pair in canonical order, if any.
    """
    n = m.n
    if n > PA_MAX_DIM:
        raise DimensionOutOfRange(f"pa_check supports n <= {PA_MAX_DIM}, got {n}")
    masks = increasing_masks(EnumConfig(n, include_empty=True, include_full=True))
    D = len(masks)
    weights, L = integer_weights(m)
    chunks = _row_chunks(D, lambda i: D - i, 1 if workers <= 1 else 4 * workers)
    tasks = [(masks, weights, L, n, a, b) for a, b in chunks]
    hit = parallel.first_hit(_pa_rows, tasks, workers)
    if hit is None:
        return PaCheckResult(None, D * (D + 1) // 2)
    i, j = hit
    scanned = i * D - i * (i - 1) // 2 + (j - i + 1)
    A = IncreasingEvent._trusted(n, int(masks[i]))
    B = IncreasingEvent._trusted(n, int(masks[j]))
    AB = IncreasingEvent._trusted(n, A.bits & B.bits)
    return PaCheckResult(PaViolation(A, B, prob(m, A), prob(m, B), prob(m, AB)), scanned)


# ---------------------------------------------------------------------------
# the ABC test


ABC_PROB_KEYS = ("P(A)", "P(B)", "P(C)", "P(AB)", "P(AC)", "P(BC)", "P(ABC)")


@dataclass(frozen=True)
class AbcWitness:
    """Triple with ``AB|C`` and ``AC|B`` but not ``B|C``.

    ``probs`` holds P(A), P(B), P(C), P(AB), P(AC), P(BC), P(ABC).
    """

    A: IncreasingEvent
    B: IncreasingEvent
    C: IncreasingEvent
    probs: tuple[Fraction, ...]

    def holds(self) -> bool:
        pa, pb, pc, pab, pac, pbc, pabc = self.probs
        return pa != 0 and pabc == pab * pc and pabc == pac * pb and pbc != pb * pc

    def verify(self, m: Measure) -> bool:
        """Recompute the probabilities under ``m`` and recheck the pattern."""
        n, A, B, C = m.n, self.A.bits, self.B.bits, self.C.bits
        ev = lambda bits: IncreasingEvent._trusted(n, bits)  # noqa: E731
        fresh = tuple(prob(m, ev(b)) for b in (A, B, C, A & B, A & C, B & C, A & B & C))
        return fresh == self.probs and self.holds()

    def to_json(self) -> dict:
        out = {
            "A": event_to_json(self.A),
            "B": event_to_json(self.B),
            "C": event_to_json(self.C),
        }
        out["probs"] = {k: _frac_json(v) for k, v in zip(ABC_PROB_KEYS, self.probs)}
        return out


@dataclass(frozen=True)
class AbcScanResult:
    witnesses: list[AbcWitness]
    triples_scanned: int

    @property
    def passed(self) -> bool:
        return not self.witnesses


def _abc_rows(masks, weights, L, n, start, stop, limit):
    lookup = WeightLookup(n, weights, pick_dtype(L * L))
    w1 = lookup(masks)
    # pairs (B, C) that are dependent; the pattern needs B and C dependent
    wbc = lookup(masks[:, None] & masks[None, :])
    bs, cs = np.nonzero(np.asarray(L * wbc != w1[:, None] * w1[None, :], dtype=bool))
    if len(bs) == 0:
        return []
    hits = []
    for a in range(start, stop):
        if w1[a] == 0:
            continue
        wab = lookup(masks[a] & masks)  # as a function of B; also of C for AC
        wabc = lookup(masks[a] & masks[bs] & masks[cs])
        ok = np.asarray(L * wabc == wab[bs] * w1[cs], dtype=bool)
        ok &= np.asarray(L * wabc == wab[cs] * w1[bs], dtype=bool)
        for k in np.flatnonzero(ok):
            hits.append((a, int(bs[k]), int(cs[k])))
            if limit is not None and len(hits) >= limit:
                return hits
    return hits


def abc_scan(m: Measure, limit: int | None = None, workers: int = 1) -> AbcScanResult:
    """All ordered triples of nonempty increasing events showing the ABC pattern.

    Triples come back in lexicographic canonical order; ``limit`` keeps the
    first ``limit`` of them.
    """
    n = m.n
    if n > ABC_MAX_DIM:
        raise DimensionOutOfRange(f"abc_scan supports n <= {ABC_MAX_DIM}, got {n}")
    if limit is not None and limit < 0:
        raise ValueError("limit must be nonnegative")
    masks = increasing_masks(EnumConfig(n, include_empty=False, include_full=True))
    D = len(masks)
    weights, L = integer_weights(m)
    chunks = _row_chunks(D, lambda i: 1, 1 if workers <= 1 else 4 * workers)
    tasks = [(masks, weights, L, n, a, b, limit) for a, b in chunks]
    hits = [h for part in parallel.run_all(_abc_rows, tasks, workers) for h in part]
    if limit is not None:
        hits = hits[:limit]
    witnesses = []
    for a, b, c in hits:
        A, B, C = (IncreasingEvent._trusted(n, int(masks[k])) for k in (a, b, c))
        probs = tuple(
            Fraction(int(v), L) for v in _abc_weights(weights, A.bits, B.bits, C.bits)
        )
        witnesses.append(AbcWitness(A, B, C, probs))
    return AbcScanResult(witnesses, D**3)


def _abc_weights(weights: list[int], a: int, b: int, c: int) -> list[int]:
    out = []
    for bits in (a, b, c, a & b, a & c, b & c, a & b & c):
        total, x = 0, 0
        while bits:
            if bits & 1:
                total += weights[x]
            bits >>= 1
            x += 1
        out.append(total)
    return out


# ---------------------------------------------------------------------------
# the three-event expression


def sahi_value(m: Measure, A: IncreasingEvent, B: IncreasingEvent, C: IncreasingEvent) -> Fraction:
    _same_dim(m.n, A, B, C)
    _nonempty(A, B, C)
    n = m.n
    ev = lambda bits: IncreasingEvent._trusted(n, bits)  # noqa: E731
    pa, pb, pc = prob(m, A), prob(m, B), prob(m, C)
    pab = prob(m, ev(A.bits & B.bits))
    pac = prob(m, ev(A.bits & C.bits))
    pbc = prob(m, ev(B.bits & C.bits))
    pabc = prob(m, ev(A.bits & B.bits & C.bits))
    return 2 * pabc - (pab * pc + pac * pb + pbc * pa) + pa * pb * pc


def sahi_polynomial(A: IncreasingEvent, B: IncreasingEvent, C: IncreasingEvent) -> Polynomial:
    """The three-event expression under the product measure with parameters p_1..p_n."""
    n = A.n
    _same_dim(n, B, C)
    _nonempty(A, B, C)
    P = lambda bits: Polynomial.event_probability(IncreasingEvent._trusted(n, bits))  # noqa: E731
    pa, pb, pc = P(A.bits), P(B.bits), P(C.bits)
    pab, pac, pbc = P(A.bits & B.bits), P(A.bits & C.bits), P(B.bits & C.bits)
    pabc = P(A.bits & B.bits & C.bits)
    return pabc * 2 - (pab * pc + pac * pb + pbc * pa) + pa * pb * pc


@dataclass(frozen=True)
class SahiReport:
    A: IncreasingEvent
    B: IncreasingEvent
    C: IncreasingEvent
    p_star: tuple[Fraction, ...]
    value: Fraction
    grid_spec: tuple[tuple[Fraction, ...], ...]

    def recompute(self) -> Fraction:
        return sahi_value(ProductMeasure(self.A.n, self.p_star), self.A, self.B, self.C)

    def to_json(self) -> dict:
        return {
            "A": event_to_json(self.A),
            "B": event_to_json(self.B),
            "C": event_to_json(self.C),
            "p_star": [_frac_json(v) for v in self.p_star],
            "value": _frac_json(self.value),
        }


@dataclass(frozen=True)
class SahiScanResult:
    minimum: SahiReport
    negatives: list[SahiReport]
    evaluations: int

    @property
    def passed(self) -> bool:
        return not self.negatives


def _normalize_grid(n: int, grid) -> tuple[tuple[Fraction, ...], ...]:
    grid = list(grid)
    if grid and isinstance(grid[0], (list, tuple)):
        per = [tuple(Fraction(v) for v in g) for g in grid]
        if len(per) != n:
            raise DimensionMismatch(f"expected {n} per-coordinate grids, got {len(per)}")
    else:
        per = [tuple(Fraction(v) for v in grid)] * n
    for g in per:
        if not g:
            raise ValueError("grid must be nonempty")
        if any(not 0 < v < 1 for v in g):
            raise DegenerateParameter("grid values must lie strictly inside (0, 1)")
    return tuple(per)


def _sahi_points(n, grid, denoms, masks, trip, start, stop):
    L = math.prod(denoms)
    dtype = pick_dtype(6 * L**3)
    I, J, K = trip
    sets = {
        "a": masks[I], "b": masks[J], "c": masks[K],
        "ab": masks[I] & masks[J], "ac": masks[I] & masks[K], "bc": masks[J] & masks[K],
    }
    sets["abc"] = sets["ab"] & masks[K]
    points = list(itertools.product(*[range(len(g)) for g in grid]))
    best = None
    negatives = []
    for g in range(start, stop):
        idx = points[g]
        # integer atom weights with common denominator L
        w = [1]
        for i in range(n):
            num = grid[i][idx[i]] * denoms[i]
            num = int(num)
            w = [v * (denoms[i] - num) for v in w] + [v * num for v in w]
        lookup = WeightLookup(n, w, dtype)
        W = {k: lookup(v) for k, v in sets.items()}
        s = (
            2 * L * L * W["abc"]
            - L * (W["ab"] * W["c"] + W["ac"] * W["b"] + W["bc"] * W["a"])
            + W["a"] * W["b"] * W["c"]
        )
        t = int(np.argmin(s))
        cand = (int(s[t]), t, g)
        if best is None or cand < best:
            best = cand
        for t in np.flatnonzero(np.asarray(s < 0, dtype=bool)):
            negatives.append((int(t), g))
    return best, negatives


def sahi_scan(n: int, grid: Sequence, workers: int = 1) -> SahiScanResult:
    """Minimize the three-event expression over all unordered triples of
    nonempty increasing events and all points of a product grid.

    ``grid`` is either one list of values used for every coordinate or a list
    of ``n`` per-coordinate lists.  Negative values are rechecked through
    :func:`sahi_polynomial` before being reported.
    """
    check_dim(n, SAHI_MAX_DIM, low=1)
    per = _normalize_grid(n, grid)
    denoms = [math.lcm(*(v.denominator for v in g)) for g in per]
    masks = increasing_masks(EnumConfig(n, include_empty=False, include_full=True))
    D = len(masks)
    trip = tuple(
        np.array(col, dtype=np.intp)
        for col in zip(*itertools.combinations_with_replacement(range(D), 3))
    )
    G = math.prod(len(g) for g in per)
    chunks = _row_chunks(G, lambda i: 1, 1 if workers <= 1 else 4 * workers)
    tasks = [(n, per, denoms, masks, trip, a, b) for a, b in chunks]
    parts = parallel.run_all(_sahi_points, tasks, workers)
    best = min(b for b, _ in parts)
    neg_hits = sorted(h for _, hs in parts for h in hs)

    points = list(itertools.product(*[range(len(g)) for g in per]))

    def report(t: int, g: int) -> SahiReport:
        A, B, C = (IncreasingEvent._trusted(n, int(masks[col[t]])) for col in trip)
        p = tuple(per[i][points[g][i]] for i in range(n))
        value = sahi_value(ProductMeasure(n, p), A, B, C)
        return SahiReport(A, B, C, p, value, per)

    minimum = report(best[1], best[2])
    if minimum.value != Fraction(best[0], math.prod(denoms) ** 3):
        raise ArithmeticError("grid minimum disagrees with exact recomputation")
    negatives = []
    for t, g in neg_hits:
        r = report(t, g)
        if not r.value < 0 or sahi_polynomial(r.A, r.B, r.C)(r.p_star) != r.value:
            raise ArithmeticError("negative grid value failed exact re-verification")
        negatives.append(r)
    return SahiScanResult(minimum, negatives, len(trip[0]) * G)
