"""Generators for the named graph families."""
from __future__ import annotations

import itertools as it

from .core import Graph, GraphError, cartesian_product, complement

__all__ = [
    "VERTEX_CAP",
    "FAMILIES",
    "generate",
    "cycle",
    "complete",
    "complete_multipartite",
    "hamming",
    "johnson",
    "folded_johnson",
    "shrikhande",
    "doob",
    "grassmann",
    "petersen",
]

VERTEX_CAP = 10**5


def _check_cap(n: int) -> None:
    if n > VERTEX_CAP:
        raise GraphError(f"{n} vertices exceeds cap {VERTEX_CAP}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs n >= 1")
    return Graph.from_adjacency(n, lambda i, j: True, f"K{n}")


def complete_multipartite(t: int, n: int) -> Graph:
    """``K_{t x n}``: ``t`` parts of size ``n``."""
    if t < 1 or n < 1:
        raise GraphError("need t, n >= 1")
    _check_cap(t * n)
    return Graph.from_adjacency(t * n, lambda i, j: i // n != j // n, f"K{t}x{n}")


def hamming(d: int, q: int) -> Graph:
    if d < 1 or q < 2:
        raise GraphError("hamming needs d >= 1, q >= 2")
    _check_cap(q**d)
    words = list(it.product(range(q), repeat=d))
    index = {w: i for i, w in enumerate(words)}
    edges = []
    for w, i in index.items():
        for pos in range(d):
            for sym in range(w[pos] + 1, q):
                edges.append((i, index[w[:pos] + (sym,) + w[pos + 1:]]))
    return Graph.from_edges(len(words), edges, f"H({d},{q})")


def _subsets(n: int, e: int) -> list[frozenset]:
    return [frozenset(c) for c in it.combinations(range(n), e)]


def johnson(n: int, e: int) -> Graph:
    if not 1 <= e <= n - 1:
        raise GraphError("johnson needs 1 <= e <= n-1")
    sets = _subsets(n, e)
    _check_cap(len(sets))
    return Graph.from_adjacency(
        len(sets), lambda i, j: len(sets[i] & sets[j]) == e - 1, f"J({n},{e})"
    )


def folded_johnson(s: int) -> Graph:
    """Antipodal quotient of ``J(2s, s)``: one vertex per complementary pair."""
    if s < 2:
        raise GraphError("folded_johnson needs s >= 2")
    # the representative of {S, complement} is the member containing 0
    reps = [S for S in _subsets(2 * s, s) if 0 in S]
    _check_cap(len(reps))
    # |S & T| = s-1 or |S & complement(T)| = s-1, i.e. |S & T| in {1, s-1}
    return Graph.from_adjacency(
        len(reps), lambda i, j: len(reps[i] & reps[j]) in (1, s - 1), f"Jbar({2 * s},{s})"
    )


def shrikhande() -> Graph:
    """Cayley graph on Z4 x Z4 with connection set {+-(1,0), +-(0,1), +-(1,1)}."""
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}

    def adjacent(i, j):
        d = ((i // 4 - j // 4) % 4, (i % 4 - j % 4) % 4)
        return d in conn

    return Graph.from_adjacency(16, adjacent, "Shrikhande")


def doob(s: int, c: int) -> Graph:
    """Cartesian product of ``s`` Shrikhande graphs and ``c`` copies of ``K4``."""
    if s < 1 or c < 0:
        raise GraphError("doob needs s >= 1, c >= 0")
    _check_cap(16**s * 4**c)
    g = shrikhande()
    for _ in range(s - 1):
        g = cartesian_product(g, shrikhande(), VERTEX_CAP)
    for _ in range(c):
        g = cartesian_product(g, complete(4), VERTEX_CAP)
    return Graph(g.n, g.adj, f"Doob({s},{c})")


def _rref_subspaces(q: int, n: int, d: int) -> list[frozenset]:
    """All ``d``-dimensional subspaces of GF(q)^n as sets of encoded vectors."""
    weights = [q**i for i in range(n)]
    out = []
    for pivots in it.combinations(range(n), d):
        free = [
            (r, col) for r, p in enumerate(pivots) for col in range(p + 1, n) if col not in pivots
        ]
        for values in it.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, col), v in zip(free, values):
                rows[r][col] = v
            span = set()
            for coeffs in it.product(range(q), repeat=d):
                vec = [sum(c * rows[r][j] for r, c in enumerate(coeffs)) % q for j in range(n)]
                span.add(sum(x * w for x, w in zip(vec, weights)))
            out.append(frozenset(span))
    return out


def grassmann(q: int, n: int, d: int) -> Graph:
    """``d``-subspaces of GF(q)^n, adjacent when they meet in dimension ``d - 1``."""
    if q not in (2, 3):
        raise GraphError("grassmann supports q in {2, 3}")
    if not 1 <= d <= n - 1:
        raise GraphError("grassmann needs 1 <= d <= n-1")
    count = 1
    for i in range(d):
        count = count * (q ** (n - i) - 1) // (q ** (i + 1) - 1)
    _check_cap(count)
    spaces = _rref_subspaces(q, n, d)
    target = q ** (d - 1)
    return Graph.from_adjacency(
        len(spaces), lambda i, j: len(spaces[i] & spaces[j]) == target, f"J_{q}({n},{d})"
    )


def petersen() -> Graph:
    g = complement(johnson(5, 2))
    return Graph(g.n, g.adj, "Petersen")


FAMILIES = {
    "cycle": cycle,
    "complete": complete,
    "complete_multipartite": complete_multipartite,
    "hamming": hamming,
    "johnson": johnson,
    "folded_johnson": folded_johnson,
    "doob": doob,
    "shrikhande": shrikhande,
    "grassmann": grassmann,
    "petersen": petersen,
}


def generate(family: str, *params: int) -> Graph:
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise GraphError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    try:
        return fn(*params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {family}: {exc}") from None
