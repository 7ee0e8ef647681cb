"""Intersection arrays of distance-regular graphs.

An array ``{b0,...,b_{D-1}; c1,...,cD}`` is an immutable value.  Feasibility
is a predicate (:func:`basic_feasibility`), not a constructor constraint, so
infeasible arrays can still be parsed, analysed and reported on.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

__all__ = [
    "ArrayParseError",
    "NonIntegralError",
    "IntersectionArray",
    "DerivedQuantities",
    "Violation",
    "parse_array",
    "format_array",
    "derive",
    "basic_feasibility",
]


class ArrayParseError(ValueError):
    pass


class NonIntegralError(ValueError):
    """Raised when some ``k_i = k_{i-1} b_{i-1} / c_i`` is not an integer."""

    def __init__(self, index: int, numerator: int, denominator: int):
        self.index = index
        self.numerator = numerator
        self.denominator = denominator
        super().__init__(f"k_{index} = {numerator}/{denominator} is not an integer")


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if len(self.b) != len(self.c) or not self.b:
            raise ArrayParseError(
                f"b and c must have equal positive length, got {len(self.b)} and {len(self.c)}"
            )

    @classmethod
    def from_text(cls, text: str) -> "IntersectionArray":
        return parse_array(text)

    def __str__(self) -> str:
        return format_array(self)

    @property
    def D(self) -> int:
        return len(self.b)

    @property
    def k(self) -> int:
        return self.b[0]

    def b_at(self, i: int) -> int:
        """``b_i`` with ``b_D = 0``."""
        return self.b[i] if i < self.D else 0

    def c_at(self, i: int) -> int:
        """``c_i`` with ``c_0 = 0``."""
        return self.c[i - 1] if i >= 1 else 0

    def a_at(self, i: int) -> int:
        if i == 0:
            return 0
        return self.k - self.b_at(i) - self.c_at(i)

    @property
    def a(self) -> tuple[int, ...]:
        """``a_1, ..., a_D``."""
        return tuple(self.a_at(i) for i in range(1, self.D + 1))

    @property
    def a1(self) -> int:
        return self.a_at(1)

    @property
    def c2(self) -> int | None:
        return self.c[1] if self.D >= 2 else None

    @property
    def is_complete(self) -> bool:
        return self.D == 1

    @cached_property
    def kseq(self) -> tuple[int, ...]:
        ks = [1]
        for i in range(1, self.D + 1):
            num = ks[-1] * self.b[i - 1]
            den = self.c[i - 1]
            if num % den:
                raise NonIntegralError(i, num, den)
            ks.append(num // den)
        return tuple(ks)

    @property
    def n(self) -> int:
        return sum(self.kseq)

    def tridiagonal(self) -> list[list[int]]:
        """Intersection matrix with rows ``(c_i, a_i, b_i)``."""
        size = self.D + 1
        rows = [[0] * size for _ in range(size)]
        for i in range(size):
            rows[i][i] = self.a_at(i)
            if i > 0:
                rows[i][i - 1] = self.c_at(i)
            if i < self.D:
                rows[i][i + 1] = self.b_at(i)
        return rows

    def sort_key(self):
        return (self.D, self.k, tuple(-x for x in self.b), self.c)


@dataclass(frozen=True)
class DerivedQuantities:
    k: int
    a: tuple[int, ...]
    kseq: tuple[int, ...]
    n: int


class Violation(NamedTuple):
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


_ARRAY_RE = re.compile(r"^\s*\{?\s*([^;{}]*?)\s*;\s*([^;{}]*?)\s*\}?\s*$")


def _parse_ints(part: str, what: str) -> list[int]:
    items = [s.strip() for s in part.split(",")]
    if not items or any(not re.fullmatch(r"[+-]?\d+", s) for s in items):
        raise ArrayParseError(f"malformed {what} sequence: {part!r}")
    return [int(s) for s in items]


def parse_array(text: str) -> IntersectionArray:
    """Parse ``"{b0,...,b_{D-1};c1,...,cD}"``; braces and whitespace optional."""
    m = _ARRAY_RE.match(text)
    if m is None:
        raise ArrayParseError(f"cannot parse intersection array: {text!r}")
    b = _parse_ints(m.group(1), "b")
    c = _parse_ints(m.group(2), "c")
    if len(b) != len(c):
        raise ArrayParseError(f"unequal lengths: {len(b)} b-entries, {len(c)} c-entries")
    if any(x <= 0 for x in b + c):
        raise ArrayParseError("entries must be positive integers")
    if c[0] != 1:
        raise ArrayParseError(f"c1 must be 1, got {c[0]}")
    return IntersectionArray(tuple(b), tuple(c))


def format_array(ia: IntersectionArray) -> str:
    return "{" + ",".join(map(str, ia.b)) + ";" + ",".join(map(str, ia.c)) + "}"


def derive(ia: IntersectionArray) -> DerivedQuantities:
    kseq = ia.kseq
    return DerivedQuantities(k=ia.k, a=ia.a, kseq=kseq, n=sum(kseq))


def basic_feasibility(ia: IntersectionArray) -> list[Violation]:
    """Every violated elementary condition, in a fixed order.

    Order: b-monotone, c-monotone, cross (``b_i >= c_j`` for ``i + j <= D``),
    a-sign, integrality.
    """
    out: list[Violation] = []
    b, c, D = ia.b, ia.c, ia.D
    for i in range(1, D):
        if i == 1 and not b[0] > b[1]:
            out.append(Violation("b-monotone", f"b0 > b1 fails ({b[0]} <= {b[1]})"))
        elif i > 1 and not b[i - 1] >= b[i]:
            out.append(Violation("b-monotone", f"b{i-1} >= b{i} fails ({b[i-1]} < {b[i]})"))
    if c[0] != 1:
        out.append(Violation("c-monotone", f"c1 = 1 fails (c1 = {c[0]})"))
    for j in range(1, D):
        if not c[j - 1] <= c[j]:
            out.append(Violation("c-monotone", f"c{j} <= c{j+1} fails ({c[j-1]} > {c[j]})"))
    for i in range(D):
        for j in range(1, D - i + 1):
            if b[i] < c[j - 1]:
                out.append(Violation("cross", f"b{i} >= c{j} fails ({b[i]} < {c[j-1]})"))
    for i in range(1, D + 1):
        ai = ia.a_at(i)
        if ai < 0:
            out.append(Violation("a-sign", f"a{i} = {ai} < 0"))
    try:
        ia.kseq
    except NonIntegralError as exc:
        out.append(Violation("integrality", str(exc)))
    return out
