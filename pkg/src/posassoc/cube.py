"""Set algebra for events on the Boolean cube {0,1}^n.

Points are integers in ``[0, 2**n)``; bit ``i`` of a point holds coordinate
``i + 1`` (little-endian).  An event is a Python ``int`` used as a bit-vector
of length ``2**n``: bit ``x`` is set iff point ``x`` belongs to the event.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DimensionMismatch, DimensionOutOfRange, NotAntichain, NotIncreasing

MAX_DIM = 20


def check_dim(n: int, limit: int = MAX_DIM, low: int = 0) -> None:
    if not isinstance(n, int) or n < low or n > limit:
        raise DimensionOutOfRange(f"dimension {n!r} outside [{low}, {limit}]")


@lru_cache(maxsize=None)
def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def low_masks(n: int) -> tuple[int, ...]:
    """For each coordinate ``i``, the event of all points with bit ``i`` clear."""
    masks = []
    size = 1 << n
    for i in range(n):
        block = 1 << i
        pattern = (1 << block) - 1  # block ones followed by block zeros
        m = 0
        for start in range(0, size, 2 * block):
            m |= pattern << start
        masks.append(m)
    return tuple(masks)


def popcount(x: int) -> int:
    return bin(x).count("1")


def points_of(bits: int) -> Iterator[int]:
    """Yield the members of a bit-vector event in ascending encoding."""
    for x, ch in enumerate(reversed(bin(bits)[2:])):
        if ch == "1":
            yield x


def _up_close_bits(n: int, bits: int) -> int:
    for i, low in enumerate(low_masks(n)):
        bits |= (bits & low) << (1 << i)
    return bits


def _minimal_bits(n: int, bits: int) -> int:
    covered = 0
    for i, low in enumerate(low_masks(n)):
        covered |= (bits & low) << (1 << i)
    return bits & ~covered


def _canonical(points: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(points), key=lambda x: (popcount(x), x)))


@dataclass(frozen=True)
class Event:
    """An arbitrary subset of {0,1}^n."""

    n: int
    bits: int

    def __post_init__(self):
        check_dim(self.n)
        if self.bits < 0 or self.bits > full_mask(self.n):
            raise ValueError(f"bit-vector does not fit 2^{self.n} points")

    @classmethod
    def from_points(cls, n: int, points: Iterable[int]) -> "Event":
        bits = 0
        for x in points:
            if not 0 <= x < (1 << n):
                raise ValueError(f"point {x} outside {{0,1}}^{n}")
            bits |= 1 << x
        return cls(n, bits)

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __iter__(self) -> Iterator[int]:
        return points_of(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def is_empty(self) -> bool:
        return self.bits == 0

    def is_full(self) -> bool:
        return self.bits == full_mask(self.n)

    def is_up_closed(self) -> bool:
        return _up_close_bits(self.n, self.bits) == self.bits


class IncreasingEvent(Event):
    """An up-closed event.  Construction validates closure."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_up_closed():
            raise NotIncreasing("event is not up-closed")

    @classmethod
    def _trusted(cls, n: int, bits: int) -> "IncreasingEvent":
        # Skips validation; callers guarantee closure.
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "bits", bits)
        return obj

    @classmethod
    def empty(cls, n: int) -> "IncreasingEvent":
        check_dim(n)
        return cls._trusted(n, 0)

    @classmethod
    def full(cls, n: int) -> "IncreasingEvent":
        check_dim(n)
        return cls._trusted(n, full_mask(n))

    @classmethod
    def generated_by(cls, n: int, sets: Iterable[Iterable[int]]) -> "IncreasingEvent":
        """Up-closure of the given subsets of ``[n]`` (1-based coordinates)."""
        points = []
        for s in sets:
            x = 0
            for c in s:
                if not 1 <= c <= n:
                    raise ValueError(f"coordinate {c} outside [1, {n}]")
                x |= 1 << (c - 1)
            points.append(x)
        return up_closure(Event.from_points(n, points))


@dataclass(frozen=True)
class Antichain:
    """Pairwise incomparable subsets of ``[n]``, stored as points in canonical
    order (cardinality, then encoding)."""

    n: int
    sets: tuple[int, ...]

    def __post_init__(self):
        check_dim(self.n)
        pts = _canonical(self.sets)
        for x in pts:
            if not 0 <= x < (1 << self.n):
                raise ValueError(f"point {x} outside {{0,1}}^{self.n}")
        for i, x in enumerate(pts):
            for y in pts[i + 1:]:
                if x & y == x:
                    raise NotAntichain(f"{x:b} is contained in {y:b}")
        object.__setattr__(self, "sets", pts)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sets)

    def as_coordinate_lists(self) -> list[list[int]]:
        return [coords_of(x) for x in self.sets]


@dataclass(frozen=True)
class CoordSet:
    """A subset of ``[n]`` as an n-bit mask."""

    mask: int

    def coords(self) -> list[int]:
        return coords_of(self.mask)

    def __or__(self, other: "CoordSet") -> "CoordSet":
        return CoordSet(self.mask | other.mask)

    def __and__(self, other: "CoordSet") -> "CoordSet":
        return CoordSet(self.mask & other.mask)

    def issubset(self, other: "CoordSet") -> bool:
        return self.mask & ~other.mask == 0

    def __bool__(self) -> bool:
        return self.mask != 0


def coords_of(x: int) -> list[int]:
    """1-based coordinates of the set encoded by ``x``."""
    out = []
    i = 1
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


def point_from_coords(coords: Iterable[int]) -> int:
    x = 0
    for c in coords:
        x |= 1 << (c - 1)
    return x


def up_closure(e: Event) -> IncreasingEvent:
    return IncreasingEvent._trusted(e.n, _up_close_bits(e.n, e.bits))


def from_antichain(a: Antichain) -> IncreasingEvent:
    bits = 0
    for x in a.sets:
        bits |= 1 << x
    return IncreasingEvent._trusted(a.n, _up_close_bits(a.n, bits))


def minimal_elements(A: IncreasingEvent) -> Antichain:
    pts = tuple(points_of(_minimal_bits(A.n, A.bits)))
    # already an antichain; bypass the quadratic validation
    obj = object.__new__(Antichain)
    object.__setattr__(obj, "n", A.n)
    object.__setattr__(obj, "sets", _canonical(pts))
    return obj


def z_set(A: IncreasingEvent) -> CoordSet:
    """Coordinates that affect ``A``: the union of its minimal elements."""
    mask = 0
    for x in points_of(_minimal_bits(A.n, A.bits)):
        mask |= x
    return CoordSet(mask)


def affecting_coordinates(A: Event) -> CoordSet:
    """Coordinates ``i`` with ``S not in A`` and ``S + {i} in A`` for some ``S``.

    Direct definition, independent of :func:`z_set`.
    """
    mask = 0
    for i, low in enumerate(low_masks(A.n)):
        outside = ~A.bits & low
        if (outside << (1 << i)) & A.bits:
            mask |= 1 << i
    return CoordSet(mask)


def _same_dim(A: Event, B: Event) -> None:
    if A.n != B.n:
        raise DimensionMismatch(f"dimensions differ: {A.n} vs {B.n}")


def intersect(A: IncreasingEvent, B: IncreasingEvent) -> IncreasingEvent:
    _same_dim(A, B)
    return IncreasingEvent._trusted(A.n, A.bits & B.bits)


def union(A: IncreasingEvent, B: IncreasingEvent) -> IncreasingEvent:
    _same_dim(A, B)
    return IncreasingEvent._trusted(A.n, A.bits | B.bits)


def event_to_json(A: IncreasingEvent) -> dict:
    return {"n": A.n, "min": minimal_elements(A).as_coordinate_lists()}


def event_from_json(obj: dict) -> IncreasingEvent:
    from .errors import ParseError

    try:
        n = obj["n"]
        sets = obj["min"]
        if not isinstance(n, int) or not isinstance(sets, list):
            raise TypeError
        pts = [point_from_coords(s) for s in sets]
        for s in sets:
            if any(not isinstance(c, int) or not 1 <= c <= n for c in s):
                raise ParseError(f"coordinate out of range in {s!r}")
        return from_antichain(Antichain(n, tuple(pts)))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed event object: {obj!r}") from exc
