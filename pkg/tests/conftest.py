"""Shared helpers and brute-force oracles.

The oracles here deliberately avoid the package's bit tricks: they loop over
points and permutations directly.
"""

from fractions import Fraction
from itertools import permutations

import pytest

from posassoc.cube import Event, IncreasingEvent, up_closure


def pt(bitstring: str) -> int:
    """Point from a bitstring with coordinate 1 leftmost."""
    return sum(1 << i for i, ch in enumerate(bitstring) if ch == "1")


def ev(n: int, *bitstrings: str) -> Event:
    return Event.from_points(n, [pt(s) for s in bitstrings])


def up(n: int, *bitstrings: str) -> IncreasingEvent:
    return up_closure(ev(n, *bitstrings))


def subset(x: int, y: int) -> bool:
    return x & y == x


def oracle_up_closure(n: int, points) -> set:
    points = set(points)
    return {y for y in range(1 << n) if any(subset(x, y) for x in points)}


def oracle_is_up(n: int, members: set) -> bool:
    return all(y in members for x in members for y in range(1 << n) if subset(x, y))


def oracle_up_sets(n: int) -> list[int]:
    """All up-closed bit-vectors, by filtering every subset of the cube."""
    out = []
    for bits in range(1 << (1 << n)):
        members = {x for x in range(1 << n) if bits >> x & 1}
        if oracle_is_up(n, members):
            out.append(bits)
    return out


def oracle_prob(weights, bits: int) -> Fraction:
    return sum((weights[x] for x in range(len(weights)) if bits >> x & 1), Fraction(0))


def oracle_product_weights(p) -> list[Fraction]:
    n = len(p)
    out = []
    for x in range(1 << n):
        w = Fraction(1)
        for i in range(n):
            w *= p[i] if x >> i & 1 else 1 - p[i]
        out.append(w)
    return out


def oracle_fixed_point_law(n: int) -> list[Fraction]:
    counts = [0] * (1 << n)
    total = 0
    for perm in permutations(range(n)):
        counts[sum(1 << i for i in range(n) if perm[i] == i)] += 1
        total += 1
    return [Fraction(c, total) for c in counts]


@pytest.fixture
def mu3_events():
    """The three increasing events "sigma fixes at least one of i, j"."""
    return up(3, "100", "010"), up(3, "100", "001"), up(3, "010", "001")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
