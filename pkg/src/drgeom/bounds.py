"""Valency and diameter bounds as hypothesis-gated feasibility evidence.

Every entry of a :class:`BoundReport` records its inputs and whether its
hypothesis holds.  Entries whose hypothesis is unmet are kept with the unmet
condition as their reason; they are never dropped.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arrays import IntersectionArray
from .geometric import GeometricPreconditionError, GeometricSolution, solve_geometric_parameters
from .polynomials import Interval
from .spectra import Spectrum, eigenvalues

__all__ = [
    "BoundEntry",
    "BoundReport",
    "valency_cap",
    "quadrangle_diameter_cap",
    "terwilliger_diameter_cap",
    "geometric_diameter_cap",
    "ivanov_diameter_cap",
    "fixed_diameter_valency_cap",
    "terwilliger_alpha_cap",
    "diameter_bounds",
    "proof_filters",
    "parameter_bounds",
    "array_bounds",
]


@dataclass(frozen=True)
class BoundEntry:
    name: str
    subject: str
    relation: str
    value: object
    applicable: bool = True
    reason: str = ""
    actual: object = None
    inputs: dict = field(default_factory=dict)
    holds: bool | None = None

    @property
    def violated(self) -> bool | None:
        if not self.applicable:
            return None
        if self.holds is not None:
            return not self.holds
        if self.actual is None or self.value is None:
            return None
        if self.relation == "<":
            return not self.actual < self.value
        if self.relation == "<=":
            return not self.actual <= self.value
        if self.relation == ">=":
            return not self.actual >= self.value
        raise ValueError(self.relation)

    def status(self) -> str:
        if not self.applicable:
            return "not applicable"
        v = self.violated
        return "n/a" if v is None else ("violated" if v else "pass")


def _fmt(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, Interval):
        return f"~{float(x.mid):.12f}"
    if isinstance(x, bool):
        return str(x).lower()
    return str(x)


class BoundReport(dict):
    """Ordered ``name -> BoundEntry`` map."""

    def add(self, entry: BoundEntry) -> BoundEntry:
        self[entry.name] = entry
        return entry

    def violations(self) -> list[BoundEntry]:
        return [e for e in self.values() if e.violated]

    def flat(self) -> dict[str, str]:
        out = {}
        for name, e in self.items():
            if not e.applicable:
                out[name] = f"not applicable: {e.reason}"
            elif e.value is None:
                out[name] = "n/a"
            else:
                text = f"{e.subject} {e.relation} {_fmt(e.value)}"
                if e.actual is not None:
                    text += f" ({e.subject}={_fmt(e.actual)}: {e.status()})"
                out[name] = text
        return out


# -- closed-form caps -------------------------------------------------------


def valency_cap(m: int, a1: int) -> int:
    """Strict valency cap: ``k < m (a_1 + m)``."""
    return m * (a1 + m)


def quadrangle_diameter_cap(m: int, a1: int) -> Fraction:
    """Strict cap ``D < 2m(a_1 + m)/(a_1 + 2)`` for graphs with an induced quadrangle."""
    return Fraction(2 * m * (a1 + m), a1 + 2)


def terwilliger_diameter_cap(k: int, c_D: int, a1: int) -> Fraction:
    """``D <= (k + c_D)/(a_1 + 2)`` for graphs with an induced quadrangle."""
    return Fraction(k + c_D, a1 + 2)


def geometric_diameter_cap(m: int) -> int:
    """Strict cap ``D < m^2`` for geometric graphs with ``c_2 >= 2``."""
    return m * m


def ivanov_diameter_cap(k: int) -> int:
    """``D <= 4^k`` when ``c_2 >= 2``."""
    return 4**k


def fixed_diameter_valency_cap(m: int, D: int, eps) -> int:
    """Largest ``k`` with ``k < D^2 (2 m^2 / eps)^(2D + 4)``."""
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if m < 2 or D < 3:
        raise ValueError("need m >= 2 and D >= 3")
    bound = D * D * (Fraction(2 * m * m) / eps) ** (2 * D + 4)
    return math.ceil(bound) - 1


def terwilliger_alpha_cap(m: int) -> int:
    """``floor(2(m-1)/(sqrt 5 - 1)) = floor((m-1)(1 + sqrt 5)/2)``, in integers."""
    if m < 2:
        raise ValueError("m must be at least 2")
    a = m - 1
    # 5a^2 is never a square for a > 0, so sqrt(5a^2) lies strictly between r and r+1
    r = math.isqrt(5 * a * a)
    return (a + r) // 2


# -- reports ---------------------------------------------------------------


def _epsilon(ia: IntersectionArray) -> Fraction | None:
    if ia.a1 == 0 or ia.c2 is None:
        return None
    return min(Fraction(ia.c2, ia.a1), Fraction(1))


def diameter_bounds(
    ia: IntersectionArray,
    m: int,
    has_quadrangle: bool | None = None,
    solution: GeometricSolution | None = None,
    spec: Spectrum | None = None,
) -> BoundReport:
    """Diameter caps; quadrangle-gated caps need ``has_quadrangle is True``.

    The ``D < m^2`` cap applies to pseudo-geometric arrays with ``c_2 >= 2``;
    when ``solution`` is not supplied a solve is attempted.
    """
    rep = BoundReport()
    D, k, a1 = ia.D, ia.k, ia.a1
    c2 = ia.c2
    inputs = {"D": D, "k": k, "a1": a1, "m": m}
    gate = "" if has_quadrangle is True else "induced quadrangle not certified"
    rep.add(BoundEntry(
        "terwilliger_diameter_cap", "D", "<=", terwilliger_diameter_cap(k, ia.c[-1], a1),
        applicable=has_quadrangle is True, reason=gate, actual=D,
        inputs={**inputs, "c_D": ia.c[-1]},
    ))
    rep.add(BoundEntry(
        "quadrangle_diameter_cap", "D", "<", quadrangle_diameter_cap(m, a1),
        applicable=has_quadrangle is True, reason=gate, actual=D, inputs=inputs,
    ))
    if solution is None and D >= 2:
        try:
            res = solve_geometric_parameters(ia, m, spec)
            solution = res if res else None
        except GeometricPreconditionError:
            solution = None
    pg_ok = solution is not None and c2 is not None and c2 >= 2
    rep.add(BoundEntry(
        "geometric_diameter_cap", "D", "<", geometric_diameter_cap(m),
        applicable=pg_ok,
        reason="" if pg_ok else "requires a pseudo-geometric array with c2 >= 2",
        actual=D, inputs=inputs,
    ))
    iv_ok = c2 is not None and c2 >= 2
    rep.add(BoundEntry(
        "ivanov_diameter_cap", "D", "<=", ivanov_diameter_cap(k),
        applicable=iv_ok, reason="" if iv_ok else "requires c2 >= 2",
        actual=D, inputs={"k": k},
    ))
    return rep


def proof_filters(ia: IntersectionArray, spec: Spectrum, m: int) -> BoundReport:
    """Spectral filters, each guarded by ``2 < m_1 < k`` where required."""
    rep = BoundReport()
    k, a1, b1 = ia.k, ia.a1, ia.b_at(1)
    th1 = spec.theta1
    m1 = spec.mults[1]
    if isinstance(m1, Interval):
        in_gate = 2 < m1.lo and m1.hi < k
    else:
        in_gate = 2 < m1 < k
    reasons = []
    if ia.D < 3:
        reasons.append("requires D >= 3")
    if not in_gate:
        reasons.append(f"requires 2 < m1 < k (m1={_fmt(m1)}, k={k})")
    eta_gate = not reasons
    if th1.is_integer:
        eta = -1 - Fraction(b1, th1.value + 1)
    else:
        eta = -1 - b1 / (th1.interval + 1)
    # eta >= -m  <=>  theta_1 >= b_1/(m-1) - 1
    eta_ok = th1.compare(Fraction(b1, m - 1) - 1) >= 0
    rep.add(BoundEntry(
        "local_eigenvalue", "eta", ">=", -m, applicable=eta_gate, reason="; ".join(reasons),
        actual=eta, inputs={"b1": b1, "theta1": th1}, holds=eta_ok,
    ))
    godsil_reason = "" if in_gate else f"requires 2 < m1 < k (m1={_fmt(m1)}, k={k})"
    if in_gate and not isinstance(m1, Interval):
        rhs = (m1 - 1) * (m1 + 2)
    else:
        rhs = None
    rep.add(BoundEntry(
        "godsil_multiplicity", "2k", "<=", rhs, applicable=in_gate, reason=godsil_reason,
        actual=2 * k if rhs is not None else None, inputs={"m1": m1, "k": k},
    ))
    eps = _epsilon(ia)
    if eps is None or ia.c2 is None:
        rep.add(BoundEntry(
            "b1_over_c2", "b1/c2", "<", None, applicable=False, reason="requires a1 > 0 and D >= 2",
        ))
    else:
        cap = Fraction((m - 1) * (a1 + m + 1)) / (eps * a1)
        rep.add(BoundEntry(
            "b1_over_c2", "b1/c2", "<", cap, actual=Fraction(b1, ia.c2),
            inputs={"eps": eps, "a1": a1, "m": m},
        ))
    return rep


def parameter_bounds(
    m: int,
    a1: int,
    c2: int | None = None,
    c_D: int | None = None,
    D: int | None = None,
    eps=None,
    k: int | None = None,
) -> BoundReport:
    """Bounds from parameters alone (no array), as printed by the ``bounds`` command."""
    rep = BoundReport()
    inputs = {"m": m, "a1": a1}
    rep.add(BoundEntry("valency_cap", "k", "<", valency_cap(m, a1), actual=k, inputs=inputs))
    rep.add(BoundEntry(
        "quadrangle_diameter_cap", "D", "<", quadrangle_diameter_cap(m, a1), actual=D,
        inputs=inputs, reason="assumes an induced quadrangle",
    ))
    if k is not None and c_D is not None:
        rep.add(BoundEntry(
            "terwilliger_diameter_cap", "D", "<=", terwilliger_diameter_cap(k, c_D, a1),
            actual=D, inputs={**inputs, "k": k, "c_D": c_D},
        ))
    else:
        rep.add(BoundEntry("terwilliger_diameter_cap", "D", "<=", None, False, "needs --k and --cD"))
    rep.add(BoundEntry("geometric_diameter_cap", "D", "<", geometric_diameter_cap(m), actual=D))
    if k is not None:
        rep.add(BoundEntry("ivanov_diameter_cap", "D", "<=", ivanov_diameter_cap(k), actual=D))
    else:
        rep.add(BoundEntry("ivanov_diameter_cap", "D", "<=", None, False, "needs --k"))
    if eps is None and c2 is not None and a1 > 0:
        eps = min(Fraction(c2, a1), Fraction(1))
    if a1 == 0:
        rep.add(BoundEntry("fixed_diameter_valency_cap", "k", "<", m * m, actual=k,
                           inputs={"branch": "a1 = 0"}))
    elif D is not None and D >= 3 and eps is not None:
        rep.add(BoundEntry(
            "fixed_diameter_valency_cap", "k", "<=", fixed_diameter_valency_cap(m, D, eps),
            actual=k, inputs={"m": m, "D": D, "eps": Fraction(eps)},
        ))
    else:
        rep.add(BoundEntry("fixed_diameter_valency_cap", "k", "<=", None, False,
                           "needs --D >= 3 and --eps (or --c2)"))
    rep.add(BoundEntry("terwilliger_alpha_cap", "alpha", "<=", terwilliger_alpha_cap(m)))
    return rep


def array_bounds(
    ia: IntersectionArray,
    m: int,
    spec: Spectrum | None = None,
    has_quadrangle: bool | None = None,
    solution: GeometricSolution | None = None,
) -> BoundReport:
    """All bounds for a concrete array: valency, diameter and spectral filters."""
    spec = spec or eigenvalues(ia)
    rep = BoundReport()
    rep.add(BoundEntry("valency_cap", "k", "<", valency_cap(m, ia.a1), actual=ia.k,
                       inputs={"m": m, "a1": ia.a1}))
    rep.update(diameter_bounds(ia, m, has_quadrangle, solution, spec))
    if ia.D >= 3:
        if ia.a1 == 0:
            rep.add(BoundEntry("fixed_diameter_valency_cap", "k", "<", m * m, actual=ia.k,
                               inputs={"branch": "a1 = 0"}))
        else:
            eps = _epsilon(ia)
            rep.add(BoundEntry(
                "fixed_diameter_valency_cap", "k", "<=", fixed_diameter_valency_cap(m, ia.D, eps),
                actual=ia.k, inputs={"eps": eps},
            ))
    else:
        rep.add(BoundEntry("fixed_diameter_valency_cap", "k", "<=", None, False, "requires D >= 3"))
    if ia.D >= 2:
        rep.update(proof_filters(ia, spec, m))
    rep.add(BoundEntry("terwilliger_alpha_cap", "alpha", "<=", terwilliger_alpha_cap(m)))
    return rep
