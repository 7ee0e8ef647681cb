"""Finite simple graphs stored as integer bitset rows."""
from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from ..arrays import IntersectionArray

__all__ = [
    "GraphError",
    "Graph",
    "Witness",
    "DistanceData",
    "distance_data",
    "is_distance_regular",
    "adjacency_spectrum_numeric",
    "has_induced_quadrangle",
    "is_terwilliger",
    "is_antipodal",
    "complement",
    "cartesian_product",
    "induced_subgraph",
    "local_graph",
    "read_graph",
    "write_graph",
    "format_graph",
    "parse_graph",
    "NUMERIC_CAP",
]

NUMERIC_CAP = 5000


class GraphError(ValueError):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    adj: tuple[int, ...]
    label: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError("adjacency rows must match vertex count")
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in _bits(row):
                if u >= self.n or not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], label: str = "") -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), label)

    @classmethod
    def from_adjacency(cls, n: int, adjacent, label: str = "") -> "Graph":
        """Build from a symmetric predicate ``adjacent(i, j)``."""
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if adjacent(i, j)]
        return cls.from_edges(n, edges, label)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def regular_degree(self) -> int | None:
        degs = {self.degree(v) for v in range(self.n)}
        return degs.pop() if len(degs) == 1 else None

    def layers(self, x: int) -> list[int]:
        """Distance layers ``Gamma_i(x)`` from ``x`` as bitsets (BFS)."""
        cache = self._cache.setdefault("layers", {})
        if x in cache:
            return cache[x]
        seen = 1 << x
        frontier = seen
        out = [frontier]
        while True:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.adj[v]
            nxt &= ~seen
            if not nxt:
                break
            seen |= nxt
            out.append(nxt)
            frontier = nxt
        cache[x] = out
        return out

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return sum(layer.bit_count() for layer in self.layers(0)) == self.n

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a


@dataclass(frozen=True)
class Witness:
    """Evidence that a regularity property fails."""

    reason: str
    data: tuple = ()

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return self.reason


@dataclass(frozen=True)
class DistanceData:
    dist: tuple[tuple[int, ...], ...]
    diameter: int


def distance_data(G: Graph) -> DistanceData:
    if not G.is_connected():
        raise GraphError("graph is disconnected")
    rows = []
    for x in range(G.n):
        row = [0] * G.n
        for i, layer in enumerate(G.layers(x)):
            for y in _bits(layer):
                row[y] = i
        rows.append(tuple(row))
    return DistanceData(tuple(rows), max(max(r) for r in rows) if rows else 0)


def diameter(G: Graph) -> int:
    if not G.is_connected():
        raise GraphError("graph is disconnected")
    return max(len(G.layers(x)) - 1 for x in range(G.n))


def is_distance_regular(G: Graph) -> IntersectionArray | Witness:
    """Intersection array of ``G``, or a witness pair with differing counts."""
    if not G.is_connected():
        raise GraphError("graph is disconnected")
    if G.n == 1:
        return Witness("single vertex has no intersection array")
    seen: dict[int, tuple[int, int, tuple[int, int]]] = {}
    D = None
    for x in range(G.n):
        layers = G.layers(x)
        if D is None:
            D = len(layers) - 1
        elif len(layers) - 1 != D:
            return Witness(
                f"eccentricity of {x} is {len(layers) - 1}, of 0 is {D}", (0, x)
            )
        for i, layer in enumerate(layers):
            below = layers[i - 1] if i > 0 else 0
            above = layers[i + 1] if i + 1 < len(layers) else 0
            for y in _bits(layer):
                row = G.adj[y]
                counts = ((row & below).bit_count(), (row & above).bit_count())
                prev = seen.get(i)
                if prev is None:
                    seen[i] = (*counts, (x, y))
                elif prev[:2] != counts:
                    return Witness(
                        f"pairs {prev[2]} and {(x, y)} at distance {i} have "
                        f"(c, b) = {prev[:2]} and {counts}",
                        (prev[2], (x, y), i),
                    )
    b = tuple(seen[i][1] for i in range(D))
    c = tuple(seen[i][0] for i in range(1, D + 1))
    return IntersectionArray(b, c)


def adjacency_spectrum_numeric(G: Graph) -> np.ndarray:
    """Eigenvalues of the adjacency matrix, ascending (dense symmetric solver)."""
    if G.n > NUMERIC_CAP:
        raise GraphError(f"numeric spectrum capped at {NUMERIC_CAP} vertices")
    return np.linalg.eigvalsh(G.adjacency_matrix().astype(float))


def has_induced_quadrangle(G: Graph) -> bool:
    """Search for an induced 4-cycle ``z - x - w - y - z``."""
    for x in range(G.n):
        nx = G.adj[x]
        for z in _bits(nx):
            # w: neighbour of x after z, not adjacent to z
            for w in _bits(nx & ~G.adj[z] & ~((1 << (z + 1)) - 1)):
                far = G.adj[z] & G.adj[w] & ~nx & ~(1 << x)
                if far:
                    return True
    return False


def is_terwilliger(G: Graph) -> bool:
    """Every common neighbourhood of a pair at distance two induces a clique.

    Vacuously true when no pair is at distance two; the notion is only
    meaningful for diameter at least two.
    """
    for x in range(G.n):
        layers = G.layers(x)
        if len(layers) < 3:
            continue
        for y in _bits(layers[2]):
            if y < x:
                continue
            common = G.adj[x] & G.adj[y]
            for u in _bits(common):
                if common & ~G.adj[u] & ~(1 << u):
                    return False
    return True


def is_antipodal(G: Graph) -> bool:
    D = diameter(G)
    far = [G.layers(x)[D] if len(G.layers(x)) > D else 0 for x in range(G.n)]
    for y in range(G.n):
        for x in _bits(far[y]):
            if (far[y] & ~(1 << x)) & ~far[x]:
                return False
    return True


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph(G.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(G.adj)),
                 f"complement({G.label})" if G.label else "")


def cartesian_product(G: Graph, H: Graph, cap: int = 10**5) -> Graph:
    """Vertex ``(g, h)`` is ``g * H.n + h``; adjacent iff equal in one factor and adjacent in the other."""
    n = G.n * H.n
    if n > cap:
        raise GraphError(f"product has {n} vertices, cap {cap}")
    rows = [0] * n
    for g in range(G.n):
        for h in range(H.n):
            row = 0
            for h2 in _bits(H.adj[h]):
                row |= 1 << (g * H.n + h2)
            for g2 in _bits(G.adj[g]):
                row |= 1 << (g2 * H.n + h)
            rows[g * H.n + h] = row
    label = f"{G.label}x{H.label}" if G.label and H.label else ""
    return Graph(n, tuple(rows), label)


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> Graph:
    vs = sorted(set(vertices))
    index = {v: i for i, v in enumerate(vs)}
    rows = []
    for v in vs:
        row = 0
        for u in _bits(G.adj[v]):
            if u in index:
                row |= 1 << index[u]
        rows.append(row)
    return Graph(len(vs), tuple(rows))


def local_graph(G: Graph, x: int) -> Graph:
    return induced_subgraph(G, G.neighbors(x))


# -- file format: "n m" then m lines "u v" with u < v ----------------------


def format_graph(G: Graph) -> str:
    lines = [f"{G.n} {G.num_edges}"]
    lines += [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphError("empty graph file")
    try:
        n, m = map(int, lines[0].split())
    except ValueError:
        raise GraphError(f"bad header line: {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise GraphError(f"header declares {m} edges, found {len(lines) - 1}")
    edges = set()
    for ln in lines[1:]:
        try:
            u, v = map(int, ln.split())
        except ValueError:
            raise GraphError(f"bad edge line: {ln!r}") from None
        if not 0 <= u < v < n:
            raise GraphError(f"edge line must satisfy 0 <= u < v < n: {ln!r}")
        if (u, v) in edges:
            raise GraphError(f"duplicate edge {u} {v}")
        edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def write_graph(G: Graph, dest) -> None:
    text = format_graph(G)
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w") as fh:
            fh.write(text)
    else:
        dest.write(text)


def read_graph(src) -> Graph:
    if isinstance(src, (str, os.PathLike)):
        with open(src) as fh:
            return parse_graph(fh.read())
    if isinstance(src, io.TextIOBase) or hasattr(src, "read"):
        return parse_graph(src.read())
    raise TypeError("expected a path or a text stream")
