"""Exact univariate polynomial arithmetic over the rationals.

Polynomials are tuples of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``()``).  Coefficients are ``int``
or :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]
Poly = tuple


def normalize(coeffs: Iterable[Number]) -> Poly:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return normalize(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, scale(q, -1))


def scale(p: Poly, c: Number) -> Poly:
    return normalize(c * a for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def evaluate(p: Poly, x):
    """Horner evaluation; ``x`` may be an int, Fraction or Interval."""
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def derivative(p: Poly) -> Poly:
    return normalize(i * p[i] for i in range(1, len(p)))


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(a) for a in p]
    dq = len(q) - 1
    lead = Fraction(q[-1])
    if len(rem) <= dq:
        return (), normalize(rem)
    quot = [Fraction(0)] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        coef = rem[i] / lead
        quot[i - dq] = coef
        if coef:
            for j in range(dq + 1):
                rem[i - dq + j] -= coef * q[j]
    return normalize(_demote(quot)), normalize(_demote(rem[:dq]))


def _demote(values):
    return [int(v) if isinstance(v, Fraction) and v.denominator == 1 else v for v in values]


def monic(p: Poly) -> Poly:
    if not p:
        return p
    lead = Fraction(p[-1])
    return normalize(_demote([Fraction(a) / lead for a in p]))


def gcd(p: Poly, q: Poly) -> Poly:
    a, b = normalize(p), normalize(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def deflate_root(p: Poly, r: Number) -> Poly:
    """Synthetic division of ``p`` by ``(x - r)``; ``r`` must be a root."""
    n = len(p) - 1
    out = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc = acc * r + p[i]
        out[i - 1] = acc
    if acc * r + p[0] != 0:
        raise ValueError(f"{r} is not a root")
    return normalize(out)


def from_roots(roots: Sequence[Number]) -> Poly:
    p: Poly = (1,)
    for r in roots:
        p = mul(p, (-r, 1))
    return p


def sign(x) -> int:
    return (x > 0) - (x < 0)


# -- Sturm sequences -------------------------------------------------------


def sturm_chain(p: Poly) -> list[Poly]:
    """Sturm sequence of ``p``, divided through by ``gcd(p, p')``.

    The division keeps sign counts right at multiple roots of ``p``.
    """
    chain = [normalize(p), derivative(p)]
    while chain[-1] and degree(chain[-1]) > 0:
        rem = divmod_poly(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(scale(rem, -1))
    g = chain[-1]
    if g and degree(g) > 0:
        chain = [divmod_poly(q, g)[0] for q in chain]
    return chain


def _variations(chain: Sequence[Poly], x: Number) -> int:
    signs = [sign(evaluate(p, x)) for p in chain]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: Sequence[Poly], lo: Number, hi: Number) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    return _variations(chain, lo) - _variations(chain, hi)


def _variations_at_minus_infinity(chain: Sequence[Poly]) -> int:
    signs = [sign(p[-1]) * (-1) ** degree(p) for p in chain if p]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots_below(chain: Sequence[Poly], x: Number) -> int:
    """Number of distinct real roots in (-inf, x]."""
    return _variations_at_minus_infinity(chain) - _variations(chain, x)


def cauchy_bound(p: Poly) -> Fraction:
    lead = abs(Fraction(p[-1]))
    return 1 + max((abs(Fraction(a)) / lead for a in p[:-1]), default=Fraction(0))


def isolate_real_roots(p: Poly, lo: Number | None = None, hi: Number | None = None):
    """Disjoint intervals ``(a, b]``, each holding exactly one root of ``p``.

    ``p`` should be squarefree.  Intervals are returned in ascending order.
    """
    if lo is None or hi is None:
        bound = cauchy_bound(p)
        lo, hi = -bound, bound
    chain = sturm_chain(p)
    stack = [(Fraction(lo), Fraction(hi), count_roots(chain, lo, hi))]
    found = []
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            found.append((a, b))
            continue
        mid = (a + b) / 2
        stack.append((a, mid, count_roots(chain, a, mid)))
        stack.append((mid, b, count_roots(chain, mid, b)))
    return sorted(found)


def bisect_root(p: Poly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval of a simple root until ``hi - lo <= width``.

    Relies on ``p`` changing sign across the root, which holds for simple roots.
    If a midpoint is itself a root the degenerate interval ``(mid, mid)`` is
    returned.
    """
    s_hi = sign(evaluate(p, hi))
    if s_hi == 0:
        return hi, hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        s_mid = sign(evaluate(p, mid))
        if s_mid == 0:
            return mid, mid
        if s_mid == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


# -- rational intervals ----------------------------------------------------


class Interval:
    """Closed interval with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @staticmethod
    def _coerce(other) -> "Interval":
        return other if isinstance(other, Interval) else Interval(other)

    def __add__(self, other):
        o = self._coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        ends = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ends), max(ends))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor contains zero")
        return self * Interval(1 / o.hi, 1 / o.lo)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __repr__(self):
        return f"Interval({float(self.lo):.15g}, {float(self.hi):.15g})"

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def integers(self) -> range:
        import math

        return range(math.ceil(self.lo), math.floor(self.hi) + 1)

    def square(self) -> "Interval":
        if self.lo >= 0:
            return Interval(self.lo**2, self.hi**2)
        if self.hi <= 0:
            return Interval(self.hi**2, self.lo**2)
        return Interval(0, max(self.lo**2, self.hi**2))
