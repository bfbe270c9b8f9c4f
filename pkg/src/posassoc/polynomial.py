"""Polynomials in p_1..p_n with exact rational coefficients.

Probabilities of events under a product measure are multilinear in the
parameters; products of them (as in the three-event correlation expression)
raise individual exponents, so exponents are unrestricted here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .cube import Event


class Polynomial:
    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.n = n
        self._terms: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != n:
                raise ValueError(f"exponent tuple {exps} has wrong length for n={n}")
            if c != 0:
                self._terms[tuple(exps)] = Fraction(c)

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: Fraction(c)})

    @classmethod
    def event_probability(cls, E: Event) -> "Polynomial":
        """Probability of ``E`` under the product measure, as a multilinear polynomial."""
        n = E.n
        c = [E.bits >> x & 1 for x in range(1 << n)]
        for i in range(n):
            bit = 1 << i
            for x in range(1 << n):
                if x & bit:
                    c[x] -= c[x ^ bit]
        return cls(n, {tuple(x >> i & 1 for i in range(n)): v for x, v in enumerate(c) if v})

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Nonzero terms in graded lexicographic order of exponent tuples."""
        return sorted(self._terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        return NotImplemented

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.n, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return Polynomial(self.n, {e: c * other for e, c in self._terms.items()})
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.n, out)

    __rmul__ = __mul__

    def __call__(self, p: Sequence) -> Fraction:
        if len(p) != self.n:
            raise ValueError(f"expected {self.n} values, got {len(p)}")
        p = [Fraction(v) for v in p]
        total = Fraction(0)
        for exps, c in self._terms.items():
            term = c
            for v, e in zip(p, exps):
                if e:
                    term *= v**e
            total += term
        return total

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.terms():
            mono = "*".join(
                f"p{i + 1}" if e == 1 else f"p{i + 1}^{e}" for i, e in enumerate(exps) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> list:
        return [[list(e), f"{c.numerator}/{c.denominator}"] for e, c in self.terms()]

