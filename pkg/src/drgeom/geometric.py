"""Parameter-level geometry of distance-regular graphs.

A geometric graph with smallest eigenvalue ``-m`` has its edges partitioned
into cliques of size ``1 + k/m`` (the lines).  Its intersection numbers then
factor as ``c_i = tau_i psi_{i-1}`` and ``b_i = (m - tau_i)(1 + k/m - psi_i)``.
Solving these equations is necessary for geometricity but not sufficient: the
Doob graphs share the Hamming arrays without being geometric, so a successful
solve is reported as *pseudo-geometric*.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import polynomials as P
from .arrays import IntersectionArray
from .spectra import ExactEigenvalue, Spectrum, char_poly, eigenvalues, has_eigenvalue_below

__all__ = [
    "GeometricPreconditionError",
    "GeometricSolution",
    "Infeasible",
    "PartialGeometryOrder",
    "PartialGeometryArray",
    "MetschResult",
    "TauPsiCheck",
    "EqualPsiTauReport",
    "FORCED_GEOMETRIC",
    "INCONSISTENT",
    "NOT_FORCED",
    "delsarte_clique_size",
    "smallest_eigenvalue_is",
    "solve_geometric_parameters",
    "check_tau_psi",
    "metsch_conditions",
    "forcing_test",
    "partial_geometry_array",
    "pg_classify",
    "classify_equal_psi_tau",
    "johnson_array",
    "grassmann_array",
    "hamming_array",
    "folded_johnson_array",
    "is_prime_power",
]


class GeometricPreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class GeometricSolution:
    m: int
    s: int
    tau: tuple[int, ...]
    psi: tuple[int, ...]
    flags: frozenset = frozenset({"pseudo_geometric"})

    def reproduce(self) -> IntersectionArray:
        """Rebuild the array from ``(tau, psi)``."""
        D = len(self.tau)
        b = [self.m * self.s] + [
            (self.m - self.tau[i - 1]) * (1 + self.s - self.psi[i]) for i in range(1, D)
        ]
        c = [self.tau[i - 1] * self.psi[i - 1] for i in range(1, D + 1)]
        return IntersectionArray(tuple(b), tuple(c))


@dataclass(frozen=True)
class Infeasible:
    reason: str
    index: int

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return f"{self.reason} (i={self.index})"


def smallest_eigenvalue_is(ia: IntersectionArray, value: int) -> bool:
    """``theta_D == value`` exactly, without a full spectrum computation."""
    return P.evaluate(char_poly(ia), value) == 0 and not has_eigenvalue_below(ia, value)


def delsarte_clique_size(ia: IntersectionArray, spec: Spectrum | None = None):
    """``1 + k / (-theta_D)``: a Fraction, or an Interval for irrational ``theta_D``."""
    if ia.D < 2:
        raise GeometricPreconditionError("Delsarte bound needs a non-complete graph (D >= 2)")
    spec = spec or eigenvalues(ia)
    th = spec.theta_min
    if th.is_integer:
        return 1 + Fraction(ia.k, -th.value)
    return 1 + ia.k / (-th.interval)


def solve_geometric_parameters(
    ia: IntersectionArray, m: int, spec: Spectrum | None = None
) -> GeometricSolution | Infeasible:
    """Solve ``c_i = tau_i psi_{i-1}``, ``b_i = (m - tau_i)(1 + k/m - psi_i)``.

    Each step is forced: ``psi_0 = tau_1 = 1`` and then ``tau_i`` and
    ``psi_i`` follow in turn.  Raises :class:`GeometricPreconditionError` when
    ``theta_D != -m`` or ``m`` does not divide ``k``.
    """
    if m < 2:
        raise GeometricPreconditionError("m must be at least 2")
    if ia.D < 2:
        raise GeometricPreconditionError("complete graphs are excluded")
    if spec is not None:
        ok = spec.theta_min.is_integer and spec.theta_min.value == -m
    else:
        ok = smallest_eigenvalue_is(ia, -m)
    if not ok:
        raise GeometricPreconditionError(f"smallest eigenvalue is not -{m}")
    if ia.k % m:
        raise GeometricPreconditionError(f"{m} does not divide k = {ia.k}")
    s = ia.k // m
    D = ia.D
    tau: list[int] = []
    psi: list[int] = [1]
    for i in range(1, D + 1):
        ci = ia.c_at(i)
        if ci % psi[-1]:
            return Infeasible(f"tau_{i} = c_{i}/psi_{i-1} = {ci}/{psi[-1]} not integral", i)
        t = ci // psi[-1]
        cap = m - 1 if i < D else m
        if not 1 <= t <= cap:
            return Infeasible(f"tau_{i} = {t} outside [1, {cap}]", i)
        tau.append(t)
        if i == D:
            break
        bi = ia.b_at(i)
        if bi % (m - t):
            return Infeasible(f"b_{i}/(m - tau_{i}) = {bi}/{m - t} not integral", i)
        p = 1 + s - bi // (m - t)
        if not 1 <= p <= s:
            return Infeasible(f"psi_{i} = {p} outside [1, {s}]", i)
        psi.append(p)
    return GeometricSolution(m=m, s=s, tau=tuple(tau), psi=tuple(psi))


@dataclass(frozen=True)
class TauPsiCheck:
    applicable: bool
    tau2_ge_psi1: bool | None
    quadrangle_required: bool
    note: str = ""

    @property
    def certified_non_geometric(self) -> bool:
        return self.applicable and self.tau2_ge_psi1 is False


def check_tau_psi(sol: GeometricSolution, ia: IntersectionArray) -> TauPsiCheck:
    """For ``c_2 >= 2`` a geometric realization needs ``tau_2 >= psi_1`` and an induced quadrangle."""
    c2 = ia.c2
    if ia.D < 2 or c2 is None or c2 < 2:
        return TauPsiCheck(False, None, False, "requires D >= 2 and c2 >= 2")
    return TauPsiCheck(True, sol.tau[1] >= sol.psi[1], True)


@dataclass(frozen=True)
class MetschResult:
    line_size_threshold: int
    cond_i: bool
    cond_ii: bool

    @property
    def both(self) -> bool:
        return self.cond_i and self.cond_ii


def metsch_conditions(k: int, lam: int, mu: int, s: int) -> MetschResult:
    """Line threshold ``lambda + 2 - (s-1)(mu-1)`` and the two sufficient conditions."""
    if k < 2 or mu < 1 or lam < 0 or s < 1:
        raise ValueError("need k >= 2, mu >= 1, lambda >= 0, s >= 1")
    threshold = lam + 2 - (s - 1) * (mu - 1)
    cond_i = lam > (2 * s - 1) * (mu - 1) - 1
    # doubled to stay in integers
    cond_ii = 2 * k < 2 * (s + 1) * (lam + 1) - s * (s + 1) * (mu - 1)
    return MetschResult(threshold, cond_i, cond_ii)


FORCED_GEOMETRIC = "forced_geometric"
INCONSISTENT = "inconsistent"
NOT_FORCED = "not_forced"


def forcing_test(ia: IntersectionArray, spec: Spectrum, m: int) -> str:
    """Large ``a_1`` relative to ``c_2`` forces geometricity and ``theta_D = -m``.

    Applies when ``-m <= theta_D < 1 - m`` and ``a_1 > m^2 c_2``.
    """
    if ia.D < 2:
        raise GeometricPreconditionError("D >= 2 required")
    th: ExactEigenvalue = spec.theta_min
    if not (th.compare(-m) >= 0 and th.compare(1 - m) < 0):
        return NOT_FORCED
    if not ia.a1 > m * m * ia.c2:
        return NOT_FORCED
    if not (th.is_integer and th.value == -m) or ia.k % m:
        return INCONSISTENT
    sol = solve_geometric_parameters(ia, m, spec)
    return FORCED_GEOMETRIC if sol else INCONSISTENT


@dataclass(frozen=True)
class PartialGeometryOrder:
    s: int
    t: int
    alpha: int

    def __post_init__(self):
        if self.s < 1 or self.t < 0 or self.alpha < 1:
            raise ValueError("need s >= 1, t >= 0, alpha >= 1")
        if self.alpha > min(self.s + 1, self.t + 1):
            raise ValueError("alpha must not exceed min(s+1, t+1)")


@dataclass(frozen=True)
class PartialGeometryArray:
    array: IntersectionArray
    eigenvalues: tuple[int, int, int]
    v: int

    @property
    def lam(self) -> int:
        return self.array.a1


def partial_geometry_array(pg: PartialGeometryOrder) -> PartialGeometryArray:
    """Point-graph parameters ``k = s(t+1)``, ``b_1 = (s-alpha+1)t``, ``c_2 = alpha(t+1)``.

    The eigenvalues are ``k``, ``s - alpha`` and ``-t - 1``: the nontrivial
    ones are the roots of ``x^2 - (lambda - mu) x - (k - mu)`` with
    ``lambda - mu = s - t - 1 - alpha`` and ``k - mu = (s - alpha)(t + 1)``.
    """
    s, t, alpha = pg.s, pg.t, pg.alpha
    if t < 1:
        raise ValueError("t >= 1 required for a strongly regular point graph")
    k = s * (t + 1)
    b1 = (s - alpha + 1) * t
    c2 = alpha * (t + 1)
    if b1 == 0:
        ia = IntersectionArray((k,), (1,))
        return PartialGeometryArray(ia, (k, -1, -1), k + 1)
    if (k * b1) % c2:
        raise ValueError(f"non-integral vertex count 1 + {k} + {k}*{b1}/{c2}")
    v = 1 + k + k * b1 // c2
    ia = IntersectionArray((k, b1), (1, c2))
    expected = (k, s - alpha, -t - 1)
    spec = eigenvalues(ia)
    got = tuple(e.value if e.is_integer else None for e in spec.eigs)
    if got != expected:
        raise AssertionError(f"spectrum {got} differs from {expected}")
    return PartialGeometryArray(ia, expected, v)


def pg_classify(pg: PartialGeometryOrder) -> str:
    if pg.alpha == pg.t + 1:
        return "latin_square"
    if pg.alpha == pg.t:
        return "steiner"
    return "other"


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = 2
    while p * p <= q:
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
        p += 1
    return True


def _gauss(n: int, q: int) -> int:
    """Gaussian integer ``[n]_q = 1 + q + ... + q^{n-1}``."""
    return sum(q**j for j in range(n))


def hamming_array(d: int, q: int) -> IntersectionArray:
    return IntersectionArray(
        tuple((d - i) * (q - 1) for i in range(d)), tuple(range(1, d + 1))
    )


def johnson_array(n: int, e: int) -> IntersectionArray:
    D = min(e, n - e)
    return IntersectionArray(
        tuple((e - j) * (n - e - j) for j in range(D)),
        tuple(j * j for j in range(1, D + 1)),
    )


def grassmann_array(q: int, n: int, d: int) -> IntersectionArray:
    D = min(d, n - d)
    return IntersectionArray(
        tuple(q ** (2 * i + 1) * _gauss(d - i, q) * _gauss(n - d - i, q) for i in range(D)),
        tuple(_gauss(i, q) ** 2 for i in range(1, D + 1)),
    )


def folded_johnson_array(s: int) -> IntersectionArray:
    """Array of the antipodal quotient of ``J(2s, s)``."""
    D = s // 2
    b = tuple((s - j) ** 2 for j in range(D))
    c = [j * j for j in range(1, D + 1)]
    if s % 2 == 0:
        c[-1] = 2 * D * D
    return IntersectionArray(b, tuple(c))


@dataclass(frozen=True)
class EqualPsiTauReport:
    applicable: bool
    note: str
    cases: tuple = field(default_factory=tuple)

    @property
    def candidates(self) -> tuple[str, ...]:
        return tuple(c["case"] for c in self.cases if not c.get("excluded"))


def _find_johnson(ia: IntersectionArray) -> int | None:
    D, k = ia.D, ia.k
    if k % D:
        return None
    n = D + k // D
    return n if johnson_array(n, D) == ia else None


def _find_grassmann(ia: IntersectionArray, q: int) -> int | None:
    D, k = ia.D, ia.k
    base = q * _gauss(D, q)
    if k % base:
        return None
    target = k // base
    j = 1
    while _gauss(j, q) < target:
        j += 1
    if _gauss(j, q) != target:
        return None
    n = D + j
    return n if grassmann_array(q, n, D) == ia else None


def classify_equal_psi_tau(sol: GeometricSolution, ia: IntersectionArray) -> EqualPsiTauReport:
    """Candidate families when ``psi_1 = tau_2 >= 2``.

    The classification holds for diameter at least three.  For ``D = 2`` the
    report is flagged not applicable, though the candidate cases are still
    listed for reference.
    """
    if ia.D < 2 or len(sol.psi) < 2:
        return EqualPsiTauReport(False, "requires D >= 2")
    psi1, tau2 = sol.psi[1], sol.tau[1]
    if not (psi1 == tau2 and psi1 >= 2):
        return EqualPsiTauReport(False, f"requires psi_1 = tau_2 >= 2 (psi_1={psi1}, tau_2={tau2})")
    applicable = ia.D >= 3
    note = "" if applicable else (
        "diameter two: strongly regular geometric graphs satisfy psi_1 in "
        "{tau_2, tau_2 - 1} up to finitely many exceptions"
    )
    cases: list[dict] = []
    if psi1 == 2:
        n = _find_johnson(ia)
        cases.append({"case": "johnson", "array_match": n is not None, "n": n})
        folded = folded_johnson_array(2 * ia.D) == ia and ia.D >= 3
        cases.append({"case": "folded_johnson", "array_match": folded, "n": 4 * ia.D if folded else None})
    else:
        q = psi1 - 1
        pp = is_prime_power(q)
        n = _find_grassmann(ia, q) if pp else None
        cases.append({
            "case": "grassmann", "q": q, "excluded": not pp,
            "array_match": n is not None, "n": n,
        })
        bound = psi1 * (psi1 - 1) * sol.m
        cases.append({"case": "small", "bound": bound, "excluded": not ia.k < bound})
    return EqualPsiTauReport(applicable, note, tuple(cases))
