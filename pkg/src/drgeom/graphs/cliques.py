"""Maximal-clique search and Delsarte clique covers.

Clique search is Bron-Kerbosch with pivoting over bitsets.  Covers are found
by exact-cover backtracking over edges.  Every search is capped; hitting a cap
raises :class:`SearchCapExceeded` so an undecided instance is never reported
as a certificate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arrays import IntersectionArray
from ..spectra import Spectrum, eigenvalues
from .core import Graph, GraphError, Witness, _bits, is_distance_regular

__all__ = [
    "SearchCapExceeded",
    "CliqueCover",
    "NonGeometricCertificate",
    "maximal_cliques",
    "delsarte_cliques",
    "geometric_cover",
    "count_geometric_covers",
    "CLIQUE_CAP",
    "NODE_CAP",
]

CLIQUE_CAP = 10**5
NODE_CAP = 10**7


class SearchCapExceeded(RuntimeError):
    """The search hit its cap; the instance is undecided."""


def _search(G: Graph, size: int | None, cap: int) -> list[tuple[int, ...]]:
    found: list[tuple[int, ...]] = []
    leaves = 0
    adj = G.adj

    def expand(R: list[int], P: int, X: int) -> None:
        nonlocal leaves
        if size is not None:
            if len(R) + P.bit_count() < size:
                return
            if len(R) == size:
                leaves += 1
                if not P and not X:
                    found.append(tuple(sorted(R)))
                if leaves > cap:
                    raise SearchCapExceeded(f"more than {cap} cliques explored")
                return
        if not P:
            if not X:
                leaves += 1
                if leaves > cap:
                    raise SearchCapExceeded(f"more than {cap} maximal cliques explored")
                if size is None:
                    found.append(tuple(sorted(R)))
            return
        pivot = max(_bits(P | X), key=lambda u: (P & adj[u]).bit_count())
        for v in _bits(P & ~adj[pivot]):
            R.append(v)
            expand(R, P & adj[v], X & adj[v])
            R.pop()
            P &= ~(1 << v)
            X |= 1 << v

    expand([], (1 << G.n) - 1, 0)
    return sorted(found)


def maximal_cliques(G: Graph, cap: int = CLIQUE_CAP) -> list[tuple[int, ...]]:
    """All maximal cliques, each sorted, in lexicographic order."""
    return _search(G, None, cap)


def delsarte_cliques(G: Graph, size, cap: int = CLIQUE_CAP) -> list[tuple[int, ...]]:
    """Maximal cliques with exactly ``size`` vertices, lexicographically ordered."""
    size = Fraction(size)
    if size.denominator != 1:
        raise GraphError(f"clique size {size} is not an integer")
    if size < 2:
        raise GraphError("clique size must be at least 2")
    return _search(G, int(size), cap)


@dataclass(frozen=True)
class CliqueCover:
    cliques: tuple[tuple[int, ...], ...]
    edge_map: dict

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NonGeometricCertificate:
    reason: str
    edge: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        if self.edge is not None:
            return f"{self.reason}: edge {self.edge[0]} {self.edge[1]}"
        return self.reason


def _prepare(G: Graph, ia: IntersectionArray | None, spec: Spectrum | None):
    if ia is None:
        ia = is_distance_regular(G)
        if isinstance(ia, Witness):
            raise GraphError(f"graph is not distance-regular: {ia}")
    if ia.D < 2:
        raise GraphError("complete graphs are not considered")
    spec = spec or eigenvalues(ia)
    th = spec.theta_min
    if not th.is_integer:
        return None, NonGeometricCertificate("no Delsarte cliques possible: smallest eigenvalue is irrational")
    size = 1 + Fraction(ia.k, -th.value)
    if size.denominator != 1:
        return None, NonGeometricCertificate(
            f"no Delsarte cliques possible: 1 + k/(-theta_D) = {size} is not an integer"
        )
    return int(size), None


def _cover_search(G: Graph, cliques, cap: int, count_all: bool, limit: int | None):
    edges = G.edges()
    eindex = {e: i for i, e in enumerate(edges)}
    masks = []
    for cl in cliques:
        mask = 0
        for a in range(len(cl)):
            for b in range(a + 1, len(cl)):
                mask |= 1 << eindex[(cl[a], cl[b])]
        masks.append(mask)
    by_edge: list[list[int]] = [[] for _ in edges]
    for ci, mask in enumerate(masks):
        for ei in _bits(mask):
            by_edge[ei].append(ci)
    for ei, cands in enumerate(by_edge):
        if not cands:
            return edges, by_edge, masks, NonGeometricCertificate(
                "edge lies in no Delsarte clique", edges[ei]
            )
    full = (1 << len(edges)) - 1
    solutions: list[list[int]] = []
    nodes = 0

    def rec(covered: int, chosen: list[int]) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise SearchCapExceeded(f"cover search exceeded {cap} nodes")
        if covered == full:
            solutions.append(list(chosen))
            return not count_all or (limit is not None and len(solutions) >= limit)
        best = None
        for ei in _bits(full & ~covered):
            opts = [c for c in by_edge[ei] if not masks[c] & covered]
            if best is None or len(opts) < len(best):
                best = opts
                if len(opts) <= 1:
                    break
        for c in best:
            chosen.append(c)
            if rec(covered | masks[c], chosen):
                return True
            chosen.pop()
        return False

    rec(0, [])
    return edges, by_edge, masks, solutions


def geometric_cover(
    G: Graph,
    ia: IntersectionArray | None = None,
    spec: Spectrum | None = None,
    clique_cap: int = CLIQUE_CAP,
    node_cap: int = NODE_CAP,
) -> CliqueCover | NonGeometricCertificate:
    """A set of Delsarte cliques partitioning the edges, or a certificate that none exists."""
    size, cert = _prepare(G, ia, spec)
    if cert is not None:
        return cert
    cliques = delsarte_cliques(G, size, clique_cap)
    edges, by_edge, masks, result = _cover_search(G, cliques, node_cap, False, None)
    if isinstance(result, NonGeometricCertificate):
        return result
    if not result:
        return NonGeometricCertificate("exact-cover search exhausted: no partition into Delsarte cliques")
    chosen = sorted(cliques[c] for c in result[0])
    edge_map = {}
    for idx, cl in enumerate(chosen):
        for a in range(len(cl)):
            for b in range(a + 1, len(cl)):
                edge_map[(cl[a], cl[b])] = idx
    return CliqueCover(tuple(chosen), edge_map)


def count_geometric_covers(
    G: Graph,
    ia: IntersectionArray | None = None,
    spec: Spectrum | None = None,
    limit: int | None = None,
    clique_cap: int = CLIQUE_CAP,
    node_cap: int = NODE_CAP,
) -> int:
    """Number of distinct edge partitions into Delsarte cliques (at most ``limit``)."""
    size, cert = _prepare(G, ia, spec)
    if cert is not None:
        return 0
    cliques = delsarte_cliques(G, size, clique_cap)
    _, _, _, result = _cover_search(G, cliques, node_cap, True, limit)
    if isinstance(result, NonGeometricCertificate):
        return 0
    return len(result)
