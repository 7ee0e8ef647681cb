"""Completely regular codes, equitable partitions and clique extensions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Graph, GraphError, Witness, _bits, diameter

__all__ = [
    "CodeProfile",
    "outer_distribution",
    "is_completely_regular",
    "is_equitable",
    "distance_partition",
    "clique_extension",
    "detect_clique_extension",
]


@dataclass(frozen=True)
class CodeProfile:
    covering_radius: int
    outer: tuple[tuple[int, ...], ...]

    @property
    def psi(self) -> tuple[int, ...]:
        """``psi_i = e_{ii}`` for ``0 <= i <= covering_radius``."""
        return tuple(self.outer[i][i] for i in range(self.covering_radius + 1))


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def outer_distribution(G: Graph, C: Iterable[int]) -> CodeProfile | Witness:
    """Outer distribution numbers ``e_{l,i}`` if they depend only on ``d(x, C)``."""
    code = _mask(C)
    if not code:
        raise GraphError("code must be nonempty")
    D = diameter(G)
    rows: dict[int, tuple[tuple[int, ...], int]] = {}
    for x in range(G.n):
        layers = G.layers(x)
        B = tuple((code & layers[i]).bit_count() if i < len(layers) else 0 for i in range(D + 1))
        dist = next(i for i, b in enumerate(B) if b)
        prev = rows.get(dist)
        if prev is None:
            rows[dist] = (B, x)
        elif prev[0] != B:
            return Witness(
                f"vertices {prev[1]} and {x} at distance {dist} from the code have "
                f"outer distributions {prev[0]} and {B}",
                (prev[1], x),
            )
    rho = max(rows)
    return CodeProfile(rho, tuple(rows[i][0] for i in range(rho + 1)))


def is_completely_regular(G: Graph, C: Iterable[int]) -> tuple[bool, CodeProfile | Witness]:
    res = outer_distribution(G, C)
    return isinstance(res, CodeProfile), res


def is_equitable(G: Graph, partition: Sequence[Iterable[int]]) -> list[list[int]] | Witness:
    """Quotient matrix of an equitable partition, or a witness of inequity."""
    parts = [sorted(set(p)) for p in partition]
    masks = [_mask(p) for p in parts]
    if any(not p for p in parts):
        raise GraphError("partition has an empty part")
    union = 0
    for m in masks:
        if union & m:
            raise GraphError("partition parts overlap")
        union |= m
    if union != (1 << G.n) - 1:
        raise GraphError("partition does not cover the vertex set")
    Q = []
    for i, part in enumerate(parts):
        first = part[0]
        row = [(G.adj[first] & m).bit_count() for m in masks]
        for v in part[1:]:
            other = [(G.adj[v] & m).bit_count() for m in masks]
            if other != row:
                return Witness(
                    f"vertices {first} and {v} in part {i} have counts {row} and {other}",
                    (first, v, i),
                )
        Q.append(row)
    return Q


def distance_partition(G: Graph, x: int) -> list[list[int]]:
    return [list(_bits(layer)) for layer in G.layers(x)]


def clique_extension(G: Graph, alpha: int, cap: int = 10**5) -> Graph:
    """Replace every vertex by an ``alpha``-clique; vertex ``(v, j)`` is ``v*alpha + j``."""
    if alpha < 1:
        raise GraphError("alpha must be at least 1")
    n = G.n * alpha
    if n > cap:
        raise GraphError(f"extension has {n} vertices, cap {cap}")
    block = (1 << alpha) - 1
    rows = []
    for v in range(G.n):
        base = 0
        for u in _bits(G.adj[v]):
            base |= block << (u * alpha)
        own = block << (v * alpha)
        for j in range(alpha):
            rows.append(base | (own & ~(1 << (v * alpha + j))))
    label = f"{alpha}-ext({G.label})" if G.label else ""
    return Graph(n, tuple(rows), label)


def detect_clique_extension(G: Graph) -> tuple[int, Graph]:
    """Collapse classes of vertices with equal closed neighbourhoods.

    Returns ``(alpha, base)`` when all classes have the same size ``alpha``,
    and ``(1, G)`` otherwise.
    """
    classes: dict[int, list[int]] = {}
    for v in range(G.n):
        classes.setdefault(G.adj[v] | (1 << v), []).append(v)
    groups = sorted(classes.values())
    sizes = {len(g) for g in groups}
    if len(sizes) != 1:
        return 1, G
    alpha = sizes.pop()
    if alpha == 1:
        return 1, G
    owner = {}
    for gi, grp in enumerate(groups):
        for v in grp:
            owner[v] = gi
    edges = set()
    for gi, grp in enumerate(groups):
        for u in _bits(G.adj[grp[0]]):
            if owner[u] != gi:
                edges.add((min(gi, owner[u]), max(gi, owner[u])))
    return alpha, Graph.from_edges(len(groups), sorted(edges))
