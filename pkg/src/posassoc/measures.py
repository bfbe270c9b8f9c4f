"""Exact-rational probability measures on {0,1}^n.

Every probability here is a :class:`fractions.Fraction`; nothing in this
module touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence, Union

from .cube import Event, check_dim, coords_of, points_of, popcount
from .errors import (
    DimensionMismatch,
    DimensionOutOfRange,
    InvalidMeasure,
    ParseError,
    ZeroProbabilityCondition,
)

Rational = Fraction


def as_rational(value) -> Fraction:
    """Parse ints, Fractions, or ``"num/den"`` strings.  Floats are refused."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact probabilities")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as exc:
            raise ParseError(f"not a rational: {value!r}") from exc
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ProductMeasure:
    n: int
    p: tuple[Fraction, ...]

    def __post_init__(self):
        check_dim(self.n)
        p = tuple(as_rational(v) for v in self.p)
        if len(p) != self.n:
            raise InvalidMeasure(f"expected {self.n} parameters, got {len(p)}")
        if any(not 0 <= v <= 1 for v in p):
            raise InvalidMeasure("product parameters must lie in [0, 1]")
        object.__setattr__(self, "p", p)

    @classmethod
    def uniform(cls, n: int) -> "ProductMeasure":
        return cls(n, (Fraction(1, 2),) * n)

    def atom(self, x: int) -> Fraction:
        w = Fraction(1)
        for i, pi in enumerate(self.p):
            w *= pi if x >> i & 1 else 1 - pi
        return w

    def to_table(self) -> "TableMeasure":
        w = [Fraction(1)]
        for pi in self.p:
            w = [v * (1 - pi) for v in w] + [v * pi for v in w]
        return TableMeasure(self.n, tuple(w))

    def weights(self) -> tuple[Fraction, ...]:
        return self.to_table().w


@dataclass(frozen=True)
class TableMeasure:
    """A measure given by its 2^n atom weights, indexed by point encoding."""

    n: int
    w: tuple[Fraction, ...]

    def __post_init__(self):
        check_dim(self.n)
        w = tuple(as_rational(v) for v in self.w)
        if len(w) != 1 << self.n:
            raise InvalidMeasure(f"expected {1 << self.n} weights, got {len(w)}")
        if any(v < 0 for v in w):
            raise InvalidMeasure("negative atom weight")
        if sum(w) != 1:
            raise InvalidMeasure(f"weights sum to {sum(w)}, not 1")
        object.__setattr__(self, "w", w)

    def atom(self, x: int) -> Fraction:
        return self.w[x]

    def to_table(self) -> "TableMeasure":
        return self

    def weights(self) -> tuple[Fraction, ...]:
        return self.w


Measure = Union[ProductMeasure, TableMeasure]


@dataclass(frozen=True)
class FkgViolation:
    """A point pair with ``w(a) w(b) > w(a & b) w(a | b)``."""

    a: int
    b: int
    lhs: Fraction
    rhs: Fraction

    def to_json(self) -> dict:
        return {
            "A": coords_of(self.a),
            "B": coords_of(self.b),
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
        }


def integer_weights(m: Measure) -> tuple[list[int], int]:
    """Atom weights scaled to integers: returns ``(W, L)`` with ``w_x = W[x] / L``."""
    w = m.weights()
    L = 1
    for v in w:
        L = L * v.denominator // math.gcd(L, v.denominator)
    return [v.numerator * (L // v.denominator) for v in w], L


def _check(m: Measure, *events: Event) -> None:
    for e in events:
        if e.n != m.n:
            raise DimensionMismatch(f"event dimension {e.n} != measure dimension {m.n}")


def prob(m: Measure, E: Event) -> Fraction:
    _check(m, E)
    if isinstance(m, ProductMeasure):
        return sum((m.atom(x) for x in points_of(E.bits)), Fraction(0))
    w = m.w
    return sum((w[x] for x in points_of(E.bits)), Fraction(0))


def is_independent(m: Measure, A: Event, B: Event) -> bool:
    _check(m, A, B)
    return prob(m, Event(A.n, A.bits & B.bits)) == prob(m, A) * prob(m, B)


def is_positively_correlated(m: Measure, A: Event, B: Event) -> bool:
    _check(m, A, B)
    return prob(m, Event(A.n, A.bits & B.bits)) >= prob(m, A) * prob(m, B)


def check_fkg(m: Measure) -> FkgViolation | None:
    """First violation of ``w(a) w(b) <= w(a & b) w(a | b)``, or ``None``.

    Pairs ``a < b`` are visited in lexicographic order; comparable pairs hold
    with equality and are skipped.
    """
    W, _ = integer_weights(m)
    size = 1 << m.n
    for a in range(size):
        wa = W[a]
        if wa == 0:
            continue
        for b in range(a + 1, size):
            if a & b == a or a & b == b:
                continue
            lhs = wa * W[b]
            rhs = W[a & b] * W[a | b]
            if lhs > rhs:
                w = m.weights()
                return FkgViolation(a, b, w[a] * w[b], w[a & b] * w[a | b])
    return None


@lru_cache(maxsize=None)
def derangements(k: int) -> int:
    if k == 0:
        return 1
    if k == 1:
        return 0
    return (k - 1) * (derangements(k - 1) + derangements(k - 2))


def fixed_point_measure(n: int) -> TableMeasure:
    """Law of the fixed-point set of a uniform random permutation of ``[n]``."""
    if not isinstance(n, int) or not 1 <= n <= 8:
        raise DimensionOutOfRange(f"fixed-point measure needs 1 <= n <= 8, got {n!r}")
    total = math.factorial(n)
    w = tuple(Fraction(derangements(n - popcount(x)), total) for x in range(1 << n))
    return TableMeasure(n, w)


def condition(m: Measure, assignment: Mapping[int, int]) -> TableMeasure:
    """Conditional law of the free coordinates given ``{coord: bit}`` (1-based).

    The free coordinates keep their relative order in the result.
    """
    fixed_mask = 0
    fixed_val = 0
    for c, bit in assignment.items():
        if not 1 <= c <= m.n:
            raise DimensionMismatch(f"coordinate {c} outside [1, {m.n}]")
        if bit not in (0, 1):
            raise ValueError(f"coordinate value must be 0 or 1, got {bit!r}")
        fixed_mask |= 1 << (c - 1)
        fixed_val |= bit << (c - 1)
    free = [i for i in range(m.n) if not fixed_mask >> i & 1]
    w = m.weights()
    out = [Fraction(0)] * (1 << len(free))
    total = Fraction(0)
    for x in range(1 << m.n):
        if x & fixed_mask != fixed_val or w[x] == 0:
            continue
        y = 0
        for j, i in enumerate(free):
            y |= (x >> i & 1) << j
        out[y] += w[x]
        total += w[x]
    if total == 0:
        raise ZeroProbabilityCondition(f"conditioning event {dict(assignment)} has probability 0")
    return TableMeasure(len(free), tuple(v / total for v in out))


def _bitstring(x: int, n: int) -> str:
    # coordinate 1 leftmost
    return "".join(str(x >> i & 1) for i in range(n))


def measure_to_json(m: Measure) -> dict:
    if isinstance(m, ProductMeasure):
        return {"type": "product", "n": m.n, "p": [format_rational(v) for v in m.p]}
    return {
        "type": "table",
        "n": m.n,
        "w": {_bitstring(x, m.n): format_rational(v) for x, v in enumerate(m.w) if v != 0},
    }


def measure_from_json(obj: dict) -> Measure:
    try:
        kind = obj["type"]
        n = obj["n"]
        if not isinstance(n, int):
            raise ParseError(f"dimension must be an integer, got {n!r}")
        if kind == "product":
            return ProductMeasure(n, tuple(as_rational(v) for v in obj["p"]))
        if kind == "table":
            w = [Fraction(0)] * (1 << n)
            for key, val in obj["w"].items():
                if len(key) != n or set(key) - {"0", "1"}:
                    raise ParseError(f"bad point key {key!r} for n={n}")
                x = sum(1 << i for i, ch in enumerate(key) if ch == "1")
                w[x] = as_rational(val)
            return TableMeasure(n, tuple(w))
        raise ParseError(f"unknown measure type {kind!r}")
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed measure object: {exc}") from exc
    except InvalidMeasure as exc:
        raise ParseError(str(exc)) from exc


def parse_rationals(text: str | Sequence) -> tuple[Fraction, ...]:
    if isinstance(text, str):
        parts = [s for s in text.split(",") if s.strip()]
        return tuple(as_rational(s) for s in parts)
    return tuple(as_rational(v) for v in text)
