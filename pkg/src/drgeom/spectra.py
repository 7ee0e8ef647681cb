"""Exact spectra of intersection arrays.

Integer eigenvalues are found exactly by testing every integer in ``[-k, k]``
against the characteristic polynomial of the tridiagonal intersection matrix.
The remaining (necessarily irrational) eigenvalues are isolated with Sturm
sequences and bisection over the rationals.  Signs of rational polynomials at
an irrational eigenvalue are decided exactly, so zero tests never rely on a
tolerance.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import polynomials as P
from .arrays import IntersectionArray
from .polynomials import Interval, Poly

__all__ = [
    "PrecisionError",
    "ExactEigenvalue",
    "Spectrum",
    "StandardSequence",
    "DEFAULT_TOL",
    "MIN_TOL",
    "char_poly",
    "eigenvalues",
    "standard_sequence",
    "multiplicity",
    "sign_changes",
    "large_eigenvalue_check",
    "valency_bound_check",
    "u2_closed_form",
    "has_eigenvalue_below",
    "spectrum_to_json",
]

DEFAULT_TOL = Fraction(1, 10**12)
MIN_TOL = Fraction(1, 10**30)
MULT_WIDTH = Fraction(1, 10**6)

Rational = Union[int, Fraction]


class PrecisionError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ExactEigenvalue:
    """An eigenvalue: either an exact integer or an isolated algebraic root.

    For an isolated root, ``poly`` is a squarefree rational polynomial with
    exactly one root in the half-open interval ``(lo, hi]``.
    """

    value: int | None
    poly: Poly
    lo: Fraction
    hi: Fraction

    @classmethod
    def integer(cls, v: int) -> "ExactEigenvalue":
        return cls(int(v), (-int(v), 1), Fraction(v), Fraction(v))

    @classmethod
    def isolated(cls, poly: Poly, lo: Fraction, hi: Fraction) -> "ExactEigenvalue":
        return cls(None, poly, Fraction(lo), Fraction(hi))

    @property
    def is_integer(self) -> bool:
        return self.value is not None

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.value) if self.is_integer else float(self.midpoint)

    def __repr__(self) -> str:
        if self.is_integer:
            return f"ExactEigenvalue({self.value})"
        return f"ExactEigenvalue(~{float(self.midpoint):.12f})"

    def refined(self, width: Fraction) -> "ExactEigenvalue":
        if self.is_integer or self.width <= width:
            return self
        lo, hi = P.bisect_root(self.poly, self.lo, self.hi, width)
        return ExactEigenvalue(None, self.poly, lo, hi)

    def _split(self) -> "ExactEigenvalue":
        return self.refined(self.width / 2)

    def compare(self, r: Rational) -> int:
        """Exact sign of ``self - r`` for a rational ``r``."""
        if self.is_integer:
            return P.sign(self.value - r)
        return P.sign(self.sign_of(P.normalize((-Fraction(r), 1))))

    def sign_of(self, p: Poly) -> int:
        """Exact sign of the rational polynomial ``p`` at this eigenvalue."""
        p = P.normalize(p)
        if not p:
            return 0
        if self.is_integer:
            return P.sign(P.evaluate(p, self.value))
        g = P.gcd(p, self.poly)
        if P.degree(g) >= 1 and P.count_roots(P.sturm_chain(g), self.lo, self.hi) > 0:
            return 0
        sqfree = P.divmod_poly(p, P.gcd(p, P.derivative(p)))[0] if P.degree(p) > 0 else p
        chain = P.sturm_chain(sqfree)
        eig = self
        while True:
            if P.degree(sqfree) == 0:
                return P.sign(p[0])
            if P.evaluate(p, eig.lo) != 0 and P.count_roots(chain, eig.lo, eig.hi) == 0:
                return P.sign(P.evaluate(p, eig.hi))
            nxt = eig._split()
            if nxt.width == eig.width:
                raise PrecisionError("could not separate eigenvalue from polynomial root")
            eig = nxt

    def __lt__(self, other):
        return _cmp(self, other) < 0

    def __gt__(self, other):
        return _cmp(self, other) > 0


def _cmp(x, y) -> int:
    if not isinstance(y, ExactEigenvalue):
        if not isinstance(x, ExactEigenvalue):
            return P.sign(x - y)
        return x.compare(y)
    if not isinstance(x, ExactEigenvalue):
        return -y.compare(x)
    if y.is_integer:
        return x.compare(y.value)
    if x.is_integer:
        return -y.compare(x.value)
    while not (x.hi <= y.lo or y.hi <= x.lo):
        if x.poly == y.poly and x.lo == y.lo and x.hi == y.hi:
            return 0
        x, y = x._split(), y._split()
    return -1 if x.hi <= y.lo else 1


@dataclass(frozen=True)
class StandardSequence:
    theta: ExactEigenvalue
    polys: tuple[Poly, ...]
    values: tuple

    @property
    def u(self) -> tuple:
        return self.values


@dataclass(frozen=True)
class Spectrum:
    ia: IntersectionArray
    eigs: tuple[ExactEigenvalue, ...]
    mults: tuple

    @property
    def theta_min(self) -> ExactEigenvalue:
        return self.eigs[-1]

    @property
    def theta1(self) -> ExactEigenvalue:
        return self.eigs[1]

    @property
    def is_integral(self) -> bool:
        return all(e.is_integer for e in self.eigs)

    def pairs(self):
        return list(zip(self.eigs, self.mults))

    def integral_multiplicities(self) -> bool:
        return all(isinstance(m, int) for m in self.mults)

    def trace_identities(self) -> dict[str, bool]:
        """``sum m = n``, ``sum m*theta = 0``, ``sum m*theta^2 = n*k``."""
        n, k = self.ia.n, self.ia.k
        s0 = s1 = s2 = Interval(0)
        for e, m in zip(self.eigs, self.mults):
            th = Interval(e.value) if e.is_integer else e.interval
            mm = m if isinstance(m, Interval) else Interval(m)
            s0 = s0 + mm
            s1 = s1 + mm * th
            s2 = s2 + mm * th.square()
        return {"sum_m": n in s0, "trace_A": 0 in s1, "trace_A2": n * k in s2}


def char_poly(ia: IntersectionArray) -> Poly:
    """Monic integer characteristic polynomial of the intersection matrix."""
    prev: Poly = (1,)
    cur: Poly = (-ia.a_at(0), 1)
    for i in range(1, ia.D + 1):
        nxt = P.sub(P.mul((-ia.a_at(i), 1), cur), P.scale(prev, ia.b_at(i - 1) * ia.c_at(i)))
        prev, cur = cur, nxt
    return cur


def has_eigenvalue_below(ia: IntersectionArray, bound: Rational) -> bool:
    """Whether some eigenvalue is strictly smaller than ``bound`` (exact)."""
    p = char_poly(ia)
    chain = P.sturm_chain(p)
    below = P.count_roots_below(chain, bound)
    if P.evaluate(p, bound) == 0:
        below -= 1
    return below > 0


def _as_eig(theta) -> ExactEigenvalue:
    if isinstance(theta, ExactEigenvalue):
        return theta
    theta = Fraction(theta)
    if theta.denominator == 1:
        return ExactEigenvalue.integer(int(theta))
    return ExactEigenvalue(None, (-theta, 1), theta, theta)


def _is_rational(eig: ExactEigenvalue) -> bool:
    return eig.is_integer or eig.lo == eig.hi


def _rational_value(eig: ExactEigenvalue) -> Fraction:
    return Fraction(eig.value) if eig.is_integer else eig.lo


def _sequence_polys(ia: IntersectionArray) -> list[Poly]:
    """``u_0(x), ..., u_D(x)`` as rational polynomials in ``x``."""
    k = ia.k
    polys: list[Poly] = [(1,), (0, Fraction(1, k))]
    for i in range(1, ia.D):
        nxt = P.sub(P.mul((-ia.a_at(i), 1), polys[i]), P.scale(polys[i - 1], ia.c_at(i)))
        polys.append(P.scale(nxt, Fraction(1, ia.b_at(i))))
    return polys[: ia.D + 1]


def standard_sequence(ia: IntersectionArray, theta) -> StandardSequence:
    """``u_0 = 1``, ``u_1 = theta/k`` and the three-term recurrence.

    Exact for rational ``theta``; interval-valued for an isolated root.
    """
    eig = _as_eig(theta)
    polys = tuple(_sequence_polys(ia))
    if _is_rational(eig):
        t = _rational_value(eig)
        u = [Fraction(1), t / ia.k]
        for i in range(1, ia.D):
            u.append(((t - ia.a_at(i)) * u[i] - ia.c_at(i) * u[i - 1]) / ia.b_at(i))
        values = tuple(u[: ia.D + 1])
    else:
        t = eig.interval
        u = [Interval(1), t / ia.k]
        for i in range(1, ia.D):
            u.append(((t - ia.a_at(i)) * u[i] - ia.c_at(i) * u[i - 1]) / ia.b_at(i))
        values = tuple(u[: ia.D + 1])
    return StandardSequence(eig, polys, values)


def _norm_poly(ia: IntersectionArray) -> Poly:
    total: Poly = ()
    for ki, u in zip(ia.kseq, _sequence_polys(ia)):
        total = P.add(total, P.scale(P.mul(u, u), ki))
    return total


def multiplicity(ia: IntersectionArray, theta):
    """``n / sum_i k_i u_i(theta)^2``.

    Returns an ``int`` or ``Fraction`` for rational ``theta``.  For an
    irrational eigenvalue returns an ``int`` when an exact check confirms an
    integral value, otherwise a rational :class:`Interval`.
    """
    eig = _as_eig(theta)
    n = ia.n
    if _is_rational(eig):
        seq = standard_sequence(ia, eig)
        norm = sum(ki * ui * ui for ki, ui in zip(ia.kseq, seq.values))
        m = Fraction(n) / norm
        return int(m) if m.denominator == 1 else m
    s = _norm_poly(ia)
    width = min(eig.width, DEFAULT_TOL)
    while True:
        eig = eig.refined(width)
        value = Interval(n) / P.evaluate(s, eig.interval)
        if value.width < MULT_WIDTH:
            ints = list(value.integers())
            if len(ints) == 1:
                cand = ints[0]
                if eig.sign_of(P.sub((n,), P.scale(s, cand))) == 0:
                    return cand
            return value
        if width <= MIN_TOL:
            return value
        width = max(width / 10**6, MIN_TOL)


def sign_changes(seq: StandardSequence) -> int:
    """Sign changes in ``u_0, ..., u_D``; exact zeros are skipped."""
    eig = seq.theta
    if _is_rational(eig):
        signs = [P.sign(v) for v in seq.values]
    else:
        signs = [eig.sign_of(p) for p in seq.polys]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def eigenvalues(ia: IntersectionArray, tol: Rational = DEFAULT_TOL) -> Spectrum:
    """The ``D + 1`` distinct eigenvalues, descending, with multiplicities."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    p = char_poly(ia)
    k = ia.k
    found: list[ExactEigenvalue] = []
    rest = p
    for r in range(-k, k + 1):
        if P.degree(rest) >= 1 and P.evaluate(rest, r) == 0:
            found.append(ExactEigenvalue.integer(r))
            rest = P.deflate_root(rest, r)
    if P.degree(rest) >= 1:
        for lo, hi in P.isolate_real_roots(rest, -k - 1, k + 1):
            lo, hi = P.bisect_root(rest, lo, hi, tol)
            found.append(ExactEigenvalue.isolated(rest, lo, hi))
    if len(found) != ia.D + 1:
        raise PrecisionError(
            f"expected {ia.D + 1} distinct real eigenvalues, isolated {len(found)}"
        )
    eigs = tuple(sorted(found, key=functools.cmp_to_key(_cmp), reverse=True))
    mults = tuple(multiplicity(ia, e) for e in eigs)
    return Spectrum(ia, eigs, mults)


def large_eigenvalue_check(spec: Spectrum, ia: IntersectionArray | None = None) -> bool | None:
    """Some eigenvalue ``theta != k`` has ``2 theta^2 > k``; ``None`` when ``D < 3``."""
    ia = ia or spec.ia
    if ia.D < 3:
        return None
    test = (-ia.k, 0, 2)
    return any(e.sign_of(test) > 0 for e in spec.eigs[1:])


def valency_bound_check(ia: IntersectionArray, m: int) -> bool:
    """``k < m (a_1 + m)``."""
    if m < 2:
        raise ValueError("m must be at least 2")
    return ia.k < m * (ia.a1 + m)


def u2_closed_form(ia: IntersectionArray, theta):
    """``(theta^2 - a_1 theta - k) / (k (k - a_1 - 1))``, or ``None`` if undefined."""
    k, a1 = ia.k, ia.a1
    den = k * (k - a1 - 1)
    if den == 0:
        return None
    eig = _as_eig(theta)
    t = _rational_value(eig) if _is_rational(eig) else eig.interval
    return (t * t - a1 * t - k) / den


def _approx(value) -> str:
    return f"{float(value):.12f}"


def _json_number(x):
    if isinstance(x, ExactEigenvalue):
        if x.is_integer:
            return x.value
        return {"approx": _approx(x.midpoint), "exact": False}
    if isinstance(x, Interval):
        return {"approx": _approx(x.mid), "exact": False}
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def spectrum_to_json(spec: Spectrum) -> list:
    """``[[theta, m], ...]``; irrational entries become approximate markers."""
    return [[_json_number(e), _json_number(m)] for e, m in zip(spec.eigs, spec.mults)]
