"""Bounded enumeration of intersection arrays with smallest eigenvalue >= -m.

The search space is split into independent tasks by the prefix
``(D, k, b_1)``.  Each task grows ``c_i`` and ``b_i`` together, pruning on the
elementary conditions as soon as they can be checked, then runs the spectral
and structural filters on every completed array.  Output is sorted into a
canonical order, so it does not depend on the number of workers or shards.
"""
from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

from . import geometric as geo
from .arrays import IntersectionArray, basic_feasibility, format_array, parse_array
from .bounds import proof_filters, quadrangle_diameter_cap
from .spectra import (
    PrecisionError,
    Spectrum,
    eigenvalues,
    has_eigenvalue_below,
    large_eigenvalue_check,
    spectrum_to_json,
    valency_bound_check,
)

__all__ = [
    "ALL_FILTERS",
    "DEFAULT_FILTERS",
    "SearchSpec",
    "Classification",
    "ResultRecord",
    "classify",
    "evaluate_array",
    "prefixes",
    "shard",
    "enumerate_arrays",
    "run",
    "merge_records",
    "read_records",
]

log = logging.getLogger(__name__)

ALL_FILTERS = ("basic", "spectral", "valency", "large_eigenvalue", "forcing", "eta", "godsil", "diameter")
DEFAULT_FILTERS = frozenset({"basic", "spectral", "valency", "large_eigenvalue", "forcing", "diameter"})

PSEUDO_GEOMETRIC = "pseudo_geometric"
CERTIFIED = "certified_non_geometric"
UNRESOLVED = "unresolved"
REJECTED = "rejected"


@dataclass(frozen=True)
class SearchSpec:
    m: int
    d_min: int
    d_max: int
    k_max: int
    c2_min: int = 1
    filters: frozenset = DEFAULT_FILTERS
    shard: tuple[int, int] = (0, 1)
    explain: bool = False

    def __post_init__(self):
        object.__setattr__(self, "filters", frozenset(self.filters) | {"basic"})
        unknown = self.filters - set(ALL_FILTERS)
        if unknown:
            raise ValueError(f"unknown filters: {sorted(unknown)}")
        if self.m < 2:
            raise ValueError("m must be at least 2")
        if not 2 <= self.d_min <= self.d_max:
            raise ValueError("need 2 <= d_min <= d_max")
        if self.k_max < 2:
            raise ValueError("k_max must be at least 2")
        if self.d_max > 4**self.k_max:
            raise ValueError("d_max exceeds 4^k_max")
        if self.c2_min < 1:
            raise ValueError("c2_min must be at least 1")
        i, total = self.shard
        if not 0 <= i < total:
            raise ValueError("shard index must satisfy 0 <= i < total")


@dataclass(frozen=True)
class Classification:
    kind: str
    reason: str = ""
    solution: geo.GeometricSolution | None = None


@dataclass
class ResultRecord:
    ia: IntersectionArray
    n: int | None
    spectrum: list | None
    theta_min: object
    cls: Classification
    filters: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    @property
    def key(self) -> str:
        return format_array(self.ia)

    def to_json(self) -> str:
        sol = self.cls.solution
        doc = {
            "ia": self.key,
            "n": self.n,
            "spectrum": self.spectrum,
            "theta_min": self.theta_min,
            "class": self.cls.kind,
            "reason": self.cls.reason or None,
            "tau": list(sol.tau) if sol else None,
            "psi": list(sol.psi) if sol else None,
            "flags": self.flags,
            "filters": [list(f) for f in self.filters],
        }
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ResultRecord":
        doc = json.loads(line)
        ia = parse_array(doc["ia"])
        sol = None
        if doc.get("tau") is not None:
            theta = doc["theta_min"]
            mm = -theta if isinstance(theta, int) else 0
            sol = geo.GeometricSolution(
                m=mm, s=ia.k // mm if mm else 0, tau=tuple(doc["tau"]), psi=tuple(doc["psi"])
            )
        return cls(
            ia=ia,
            n=doc["n"],
            spectrum=doc["spectrum"],
            theta_min=doc["theta_min"],
            cls=Classification(doc["class"], doc.get("reason") or "", sol),
            filters=[tuple(f) for f in doc["filters"]],
            flags=list(doc.get("flags", [])),
        )


def classify(ia: IntersectionArray, spec: Spectrum, m: int) -> Classification:
    """Array-level verdict.

    With an integral smallest eigenvalue ``-m'`` the line equations are
    solved for ``m'``; otherwise a forcing contradiction certifies that no
    geometric (indeed no) graph realizes the array.  Pseudo-geometric never
    asserts that a graph exists.
    """
    th = spec.theta_min
    if th.is_integer and th.value <= -2:
        mm = -th.value
        if ia.k % mm:
            return Classification(CERTIFIED, f"m-not-dividing-k: {mm} does not divide {ia.k}")
        sol = geo.solve_geometric_parameters(ia, mm, spec)
        if not sol:
            return Classification(CERTIFIED, f"line-equations: {sol}")
        chk = geo.check_tau_psi(sol, ia)
        if chk.certified_non_geometric:
            return Classification(CERTIFIED, f"tau2-below-psi1: tau2={sol.tau[1]} < psi1={sol.psi[1]}", sol)
        return Classification(PSEUDO_GEOMETRIC, "", sol)
    if ia.D >= 2 and geo.forcing_test(ia, spec, m) == geo.INCONSISTENT:
        return Classification(CERTIFIED, "inconsistent-by-forcing")
    return Classification(UNRESOLVED)


def _theta_json(spec: Spectrum):
    return spectrum_to_json(spec)[-1][0]


def _diameter_check(ia: IntersectionArray, sol: geo.GeometricSolution) -> str | None:
    """Reason string when no geometric realization fits the diameter caps."""
    if ia.c2 is None or ia.c2 < 2:
        return None
    mm = sol.m
    if not ia.D < mm * mm:
        return f"diameter-bound: D={ia.D} >= m^2={mm * mm}"
    cap = quadrangle_diameter_cap(mm, ia.a1)
    if not ia.D < cap:
        return f"diameter-bound: D={ia.D} >= 2m(a1+m)/(a1+2)={cap}"
    return None


def evaluate_array(
    ia: IntersectionArray, m: int, filters: Iterable[str] = DEFAULT_FILTERS, explain: bool = True
) -> ResultRecord | None:
    """Run the filter pipeline and classification on one array.

    Returns ``None`` for a rejected array unless ``explain`` is set, in which
    case the record carries class ``rejected`` and the failing filter.
    """
    filters = frozenset(filters)
    trace: list[tuple[str, str]] = []
    flags: list[str] = []

    def reject(name: str, why: str, spec: Spectrum | None = None):
        trace.append((name, "fail"))
        if not explain:
            return None
        n = None
        try:
            n = ia.n
        except ValueError:
            pass
        return ResultRecord(
            ia, n, spectrum_to_json(spec) if spec else None,
            _theta_json(spec) if spec else None,
            Classification(REJECTED, f"{name}: {why}"), trace, flags,
        )

    violations = basic_feasibility(ia)
    if violations:
        return reject("basic", "; ".join(map(str, violations)))
    trace.append(("basic", "pass"))
    if ia.is_complete:
        flags.append("complete")
        return ResultRecord(ia, ia.n, None, -1, Classification(UNRESOLVED, "complete graph"), trace, flags)
    if ia.D == 2 and ia.c2 == ia.k:
        flags.append("complete_multipartite")

    if "valency" in filters:
        if not valency_bound_check(ia, m):
            return reject("valency", f"k={ia.k} >= m(a1+m)={m * (ia.a1 + m)}")
        trace.append(("valency", "pass"))

    if "spectral" in filters and has_eigenvalue_below(ia, -m):
        return reject("spectral", f"smallest eigenvalue < -{m}")
    try:
        spec = eigenvalues(ia)
    except PrecisionError as exc:
        rec = ResultRecord(ia, ia.n, None, None, Classification(UNRESOLVED, f"precision: {exc}"), trace, flags)
        flags.append("precision_failure")
        return rec
    if "spectral" in filters:
        if not spec.integral_multiplicities():
            return reject("spectral", "non-integral multiplicity", spec)
        traces = spec.trace_identities()
        if not all(traces.values()):
            bad = [k for k, ok in traces.items() if not ok]
            return reject("spectral", f"trace identities fail: {bad}", spec)
        trace.append(("spectral", "pass"))

    if "large_eigenvalue" in filters:
        res = large_eigenvalue_check(spec, ia)
        if res is None:
            trace.append(("large_eigenvalue", "not-applicable"))
        elif not res:
            return reject("large_eigenvalue", "no eigenvalue theta != k with 2 theta^2 > k", spec)
        else:
            trace.append(("large_eigenvalue", "pass"))

    if "forcing" in filters:
        verdict = geo.forcing_test(ia, spec, m)
        if verdict == geo.INCONSISTENT:
            return reject("forcing", "large a1 forces theta_D = -m and a geometric solution", spec)
        trace.append(("forcing", "pass" if verdict == geo.FORCED_GEOMETRIC else "not-applicable"))

    if {"eta", "godsil"} & filters:
        rep = proof_filters(ia, spec, m)
        for name, key in (("eta", "local_eigenvalue"), ("godsil", "godsil_multiplicity")):
            if name not in filters:
                continue
            entry = rep[key]
            if entry.violated:
                return reject(name, f"{key} violated", spec)
            trace.append((name, "pass" if entry.applicable else "not-applicable"))

    cls = classify(ia, spec, m)
    if "diameter" in filters:
        if cls.kind == PSEUDO_GEOMETRIC:
            why = _diameter_check(ia, cls.solution)
            if why:
                trace.append(("diameter", "fail"))
                cls = Classification(CERTIFIED, why, cls.solution)
            else:
                applicable = ia.c2 is not None and ia.c2 >= 2
                trace.append(("diameter", "pass" if applicable else "not-applicable"))
        else:
            trace.append(("diameter", "not-applicable"))
    return ResultRecord(ia, ia.n, spectrum_to_json(spec), _theta_json(spec), cls, trace, flags)


# -- search space ------------------------------------------------------------


def prefixes(spec: SearchSpec) -> list[tuple[int, int, int]]:
    """All ``(D, k, b1)`` task prefixes in canonical order."""
    out = []
    for D in range(spec.d_min, spec.d_max + 1):
        for k in range(2, spec.k_max + 1):
            for b1 in range(k - 1, 0, -1):
                a1 = k - b1 - 1
                if "valency" in spec.filters and not k < spec.m * (a1 + spec.m):
                    continue
                out.append((D, k, b1))
    return out


def shard(spec: SearchSpec, i: int, total: int) -> SearchSpec:
    return replace(spec, shard=(i, total))


def _shard_prefixes(spec: SearchSpec) -> list[tuple[int, int, int]]:
    i, total = spec.shard
    return [p for j, p in enumerate(prefixes(spec)) if j % total == i]


def _grow(D: int, k: int, b1: int, c2_min: int) -> Iterator[IntersectionArray]:
    """Arrays with the given prefix satisfying monotonicity, cross, sign and integrality."""
    if D < 2 or b1 < 1 or k - b1 - 1 < 0:
        return
    b = [k, b1]
    c = [1]
    ks = [1, k]

    def choose_c(i: int):
        lo = max(c[-1], c2_min if i == 2 else 1)
        # c_i <= b_j for j <= D - i; b is nonincreasing so the last known one binds
        hi = min(k, b[min(D - i, i - 1)])
        for ci in range(lo, hi + 1):
            num = ks[-1] * b[i - 1]
            if num % ci:
                continue
            c.append(ci)
            ks.append(num // ci)
            if i == D:
                yield IntersectionArray(tuple(b), tuple(c))
            else:
                yield from choose_b(i)
            c.pop()
            ks.pop()

    def choose_b(i: int):
        # a_i >= 0 caps b_i; b_i >= c_j for j <= min(i, D - i)
        hi = min(b[i - 1], k - c[i - 1])
        lo = max(1, c[min(D - i, i) - 1])
        for bi in range(hi, lo - 1, -1):
            b.append(bi)
            yield from choose_c(i + 1)
            b.pop()

    yield from choose_c(2)


def _run_prefix(args) -> list[str]:
    spec, prefix = args
    D, k, b1 = prefix
    out = []
    for ia in _grow(D, k, b1, spec.c2_min):
        rec = evaluate_array(ia, spec.m, spec.filters, spec.explain)
        if rec is not None:
            out.append((ia.sort_key(), rec.to_json()))
    out.sort()
    return [line for _, line in out]


def _workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, workers)
    env = os.environ.get("DRGEOM_WORKERS")
    return max(1, int(env)) if env else 1


def run(spec: SearchSpec, workers: int | None = None) -> Iterator[str]:
    """Result lines for this shard, in canonical order."""
    tasks = [(spec, p) for p in _shard_prefixes(spec)]
    n = _workers(workers)
    if n == 1:
        for t in tasks:
            yield from _run_prefix(t)
        return
    with ProcessPoolExecutor(max_workers=n) as pool:
        for lines in pool.map(_run_prefix, tasks, chunksize=4):
            yield from lines


def enumerate_arrays(spec: SearchSpec, workers: int | None = None) -> Iterator[ResultRecord]:
    for line in run(spec, workers):
        yield ResultRecord.from_json(line)


def _line_key(line: str):
    return parse_array(json.loads(line)["ia"]).sort_key()


def merge_records(*streams: Iterable[str]) -> list[str]:
    """Merge result lines from several shards into canonical order."""
    lines = [ln for s in streams for ln in s if ln.strip()]
    return sorted(lines, key=_line_key)


def read_records(path) -> tuple[list[str], set[str]]:
    """Complete lines of a result store and their canonical keys.

    A trailing partial line (from an interrupted run) is dropped.
    """
    lines, keys = [], set()
    if not os.path.exists(path):
        return lines, keys
    with open(path) as fh:
        for ln in fh:
            if not ln.endswith("\n"):
                break
            try:
                key = json.loads(ln)["ia"]
            except (ValueError, KeyError):
                break
            lines.append(ln.rstrip("\n"))
            keys.add(key)
    return lines, keys
