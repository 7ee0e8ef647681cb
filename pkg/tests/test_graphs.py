import io
import random

import networkx as nx
import numpy as np
import pytest

from drgeom.arrays import parse_array
from drgeom.geometric import (
    check_tau_psi,
    folded_johnson_array,
    grassmann_array,
    hamming_array,
    johnson_array,
    solve_geometric_parameters,
)
from drgeom.graphs import (
    Graph,
    GraphError,
    SearchCapExceeded,
    Witness,
    adjacency_spectrum_numeric,
    clique_extension,
    complement,
    count_geometric_covers,
    delsarte_cliques,
    detect_clique_extension,
    diameter,
    distance_data,
    distance_partition,
    generate,
    geometric_cover,
    has_induced_quadrangle,
    is_antipodal,
    is_completely_regular,
    is_distance_regular,
    is_equitable,
    is_terwilliger,
    local_graph,
    maximal_cliques,
    parse_graph,
    read_graph,
    write_graph,
)
from drgeom.graphs.cliques import _search
from drgeom.graphs.core import format_graph
from drgeom.spectra import eigenvalues


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


FAMILY_CASES = [
    (("hamming", 3, 3), hamming_array(3, 3)),
    (("hamming", 3, 4), hamming_array(3, 4)),
    (("hamming", 2, 4), hamming_array(2, 4)),
    (("johnson", 5, 2), johnson_array(5, 2)),
    (("johnson", 6, 3), johnson_array(6, 3)),
    (("johnson", 7, 3), johnson_array(7, 3)),
    (("folded_johnson", 4), folded_johnson_array(4)),
    (("folded_johnson", 6), folded_johnson_array(6)),
    (("grassmann", 2, 4, 2), grassmann_array(2, 4, 2)),
    (("grassmann", 3, 4, 2), grassmann_array(3, 4, 2)),
    (("doob", 1, 1), hamming_array(3, 4)),
    (("doob", 1, 0), hamming_array(2, 4)),
    (("shrikhande",), parse_array("{6,3;1,2}")),
    (("petersen",), parse_array("{3,2;1,1}")),
    (("cycle", 7), parse_array("{2,1,1;1,1,1}")),
    (("complete_multipartite", 3, 2), parse_array("{4,1;1,4}")),
]


@pytest.mark.parametrize("call, array", FAMILY_CASES, ids=lambda v: "-".join(map(str, v)) if isinstance(v, tuple) else "")
def test_family_array_matches_closed_form(call, array):
    assert is_distance_regular(generate(*call)) == array


def test_family_sizes():
    G = generate("hamming", 3, 4)
    assert G.n == 64 and G.regular_degree() == 9
    G = generate("doob", 1, 1)
    assert G.n == 64 and G.regular_degree() == 9
    G = generate("folded_johnson", 3)
    assert G.n == 10 and G.regular_degree() == 9


def test_caps_and_bad_parameters():
    with pytest.raises(GraphError):
        generate("hamming", 20, 4)
    with pytest.raises(GraphError):
        generate("nonesuch", 1)
    with pytest.raises(GraphError):
        generate("grassmann", 5, 4, 2)


def test_distance_regularity_witness():
    P = generate("petersen")
    u, v = next((u, v) for u in range(P.n) for v in range(u + 1, P.n) if not P.has_edge(u, v))
    G = Graph.from_edges(P.n, P.edges() + [(u, v)])
    res = is_distance_regular(G)
    assert isinstance(res, Witness) and not res


def test_disconnected_raises():
    with pytest.raises(GraphError):
        is_distance_regular(Graph.from_edges(4, [(0, 1), (2, 3)]))


def test_distances_match_networkx():
    rng = random.Random(7)
    for _ in range(20):
        H = nx.connected_watts_strogatz_graph(rng.randint(5, 25), 4, 0.3, seed=rng.randint(0, 10**6))
        G = Graph.from_edges(H.number_of_nodes(), H.edges())
        dd = distance_data(G)
        lengths = dict(nx.all_pairs_shortest_path_length(H))
        assert all(dd.dist[u][v] == lengths[u][v] for u in H for v in H)
        assert diameter(G) == nx.diameter(H)


@pytest.mark.parametrize("call, expected", [
    (("petersen",), [(3, 1), (1, 5), (-2, 4)]),
    (("shrikhande",), [(6, 1), (2, 6), (-2, 9)]),
    (("complete", 4), [(3, 1), (-1, 3)]),
])
def test_numeric_spectrum(call, expected):
    numeric = adjacency_spectrum_numeric(generate(*call))
    values = sorted(v for v, m in expected for _ in range(m))
    assert np.allclose(numeric, values, atol=1e-9)


def test_maximal_cliques_match_networkx():
    rng = random.Random(11)
    for _ in range(25):
        H = nx.gnp_random_graph(rng.randint(4, 20), 0.4, seed=rng.randint(0, 10**6))
        G = Graph.from_edges(H.number_of_nodes(), H.edges())
        expected = sorted(tuple(sorted(c)) for c in nx.find_cliques(H))
        assert maximal_cliques(G) == expected


def test_clique_search_cap_is_explicit():
    with pytest.raises(SearchCapExceeded):
        _search(generate("hamming", 3, 4), None, cap=10)


def test_delsarte_cliques():
    assert len(delsarte_cliques(generate("hamming", 3, 4), 4)) == 48
    assert delsarte_cliques(generate("shrikhande"), 4) == []
    with pytest.raises(GraphError):
        delsarte_cliques(generate("petersen"), "5/2")


@pytest.mark.parametrize("call", [("hamming", 3, 3), ("johnson", 6, 3), ("grassmann", 2, 4, 2), ("petersen",), ("cycle", 5)])
def test_delsarte_bound_holds_for_every_maximal_clique(call):
    G = generate(*call)
    ia = is_distance_regular(G)
    th = eigenvalues(ia).theta_min
    for cl in maximal_cliques(G):
        # |C| <= 1 + k/(-theta_D)  <=>  (|C| - 1)(-theta_D) <= k
        assert th.compare(-ia.k / (len(cl) - 1)) >= 0 if len(cl) > 1 else True


def test_cover_results():
    cover = geometric_cover(generate("hamming", 3, 4))
    assert len(cover.cliques) == 48
    assert len(cover.edge_map) == generate("hamming", 3, 4).num_edges
    cert = geometric_cover(generate("doob", 1, 1))
    assert not cert and cert.edge is not None
    assert "no Delsarte clique" in cert.reason
    assert not geometric_cover(generate("petersen"))
    assert not geometric_cover(generate("shrikhande"))
    assert not geometric_cover(generate("cycle", 5))


def test_doob_certificate_edge_inside_shrikhande_factor():
    cert = geometric_cover(generate("doob", 1, 1))
    u, v = cert.edge
    # vertex (g, h) is g * 4 + h; a Shrikhande edge keeps the K4 coordinate
    assert u % 4 == v % 4


def test_johnson_has_exactly_two_covers():
    assert count_geometric_covers(generate("johnson", 6, 3)) == 2


@pytest.mark.parametrize("call", [("hamming", 3, 3), ("johnson", 7, 3), ("grassmann", 2, 4, 2), ("johnson", 19, 2)])
def test_cover_implies_tau_psi_condition(call):
    G = generate(*call)
    cover = geometric_cover(G)
    assert cover
    ia = is_distance_regular(G)
    sol = solve_geometric_parameters(ia, -eigenvalues(ia).theta_min.value)
    assert not check_tau_psi(sol, ia).certified_non_geometric


def test_folded_johnson_12_6_is_pseudo_geometric_without_cover():
    """The array solves the line equations, yet the graph has no Delsarte partition.

    Each edge lies in exactly two Delsarte 7-cliques, indexed by a pair of
    disjoint 5-subsets; a partition would properly 2-colour the Kneser graph
    on 5-subsets of 12 points, which is not bipartite.
    """
    G = generate("folded_johnson", 6)
    ia = is_distance_regular(G)
    sol = solve_geometric_parameters(ia, 6)
    assert (sol.tau, sol.psi) == ((1, 2, 6), (1, 2, 3))
    cliques = delsarte_cliques(G, 7)
    assert len(cliques) == 792
    per_edge = {}
    for cl in cliques:
        for i, u in enumerate(cl):
            for v in cl[i + 1:]:
                per_edge[(u, v)] = per_edge.get((u, v), 0) + 1
    assert set(per_edge.values()) == {2} and len(per_edge) == G.num_edges
    assert not geometric_cover(G)


def test_quadrangles_and_terwilliger():
    P = generate("petersen")
    assert is_terwilliger(P) and not has_induced_quadrangle(P)
    H = generate("hamming", 3, 3)
    assert not is_terwilliger(H) and has_induced_quadrangle(H)
    assert is_terwilliger(generate("complete", 4))


def test_antipodal():
    assert is_antipodal(generate("johnson", 6, 3))
    assert not is_antipodal(generate("petersen"))


def test_complement_and_local_graph():
    Pc = complement(generate("petersen"))
    assert is_distance_regular(Pc) == parse_array("{6,2;1,4}")
    assert Pc.num_edges == generate("johnson", 5, 2).num_edges
    L = local_graph(generate("hamming", 3, 3), 0)
    assert L.n == 6 and L.regular_degree() == 1
    assert nx.number_connected_components(to_nx(L)) == 3


def test_local_graph_of_hamming_3_4_is_three_triangles():
    L = local_graph(generate("hamming", 3, 4), 5)
    assert L.n == 9 and L.regular_degree() == 2
    assert sorted(len(c) for c in nx.connected_components(to_nx(L))) == [3, 3, 3]


def test_completely_regular_line():
    H = generate("hamming", 3, 3)
    line = [0, 1, 2]
    ok, prof = is_completely_regular(H, line)
    assert ok and prof.covering_radius == 2 and prof.psi == (1, 1, 1)


def test_completely_regular_petersen_edge():
    P = generate("petersen")
    ok, prof = is_completely_regular(P, P.edges()[0])
    assert ok and prof.covering_radius == 2
    # an end of the edge sees itself at distance 0 and the other end at distance 1
    assert prof.outer[0] == (1, 1, 0)


def test_equitable_partitions():
    C5 = generate("cycle", 5)
    X = clique_extension(C5, 2)
    Q = is_equitable(X, [[2 * v, 2 * v + 1] for v in range(5)])
    A = C5.adjacency_matrix()
    assert np.array_equal(np.array(Q), 2 * A + np.eye(5, dtype=int))
    P = generate("petersen")
    assert is_equitable(P, [[v] for v in range(P.n)]) == P.adjacency_matrix().tolist()
    assert is_equitable(P, distance_partition(P, 0)) == [[0, 3, 0], [1, 0, 2], [0, 1, 2]]
    assert isinstance(is_equitable(P, [[0, 1], list(range(2, 10))]), Witness)
    with pytest.raises(GraphError):
        is_equitable(P, [[0, 1], [1, 2]])


@pytest.mark.parametrize("call", [("hamming", 3, 3), ("johnson", 6, 3), ("folded_johnson", 4), ("petersen",)])
def test_distance_partition_quotient_is_intersection_matrix(call):
    G = generate(*call)
    ia = is_distance_regular(G)
    for x in (0, G.n - 1):
        assert is_equitable(G, distance_partition(G, x)) == ia.tridiagonal()


@pytest.mark.parametrize("call, alpha", [(("shrikhande",), 2), (("petersen",), 3), (("cycle", 5), 2)])
def test_clique_extension_spectrum_map(call, alpha):
    G = generate(*call)
    base = adjacency_spectrum_numeric(G)
    ext = adjacency_spectrum_numeric(clique_extension(G, alpha))
    for theta in base:
        assert np.min(np.abs(ext - (alpha * (theta + 1) - 1))) < 1e-6
    assert clique_extension(G, alpha).regular_degree() == alpha * (G.regular_degree() + 1) - 1


def test_detect_clique_extension():
    alpha, base = detect_clique_extension(generate("complete", 4))
    assert alpha == 4 and base.n == 1
    alpha, base = detect_clique_extension(clique_extension(generate("petersen"), 2))
    assert alpha == 2 and is_distance_regular(base) == parse_array("{3,2;1,1}")
    assert detect_clique_extension(generate("petersen"))[0] == 1


def test_graph_file_round_trip(tmp_path):
    G = generate("johnson", 6, 3)
    path = tmp_path / "j63.g"
    write_graph(G, path)
    assert read_graph(path) == G
    assert read_graph(io.StringIO(format_graph(G))) == G


@pytest.mark.parametrize("text", ["", "3 1\n0 1\n1 2\n", "3 1\n1 0\n", "3 2\n0 1\n0 1\n", "3 1\n0 5\n", "x y\n"])
def test_graph_file_errors(text):
    with pytest.raises(GraphError):
        parse_graph(text)


def test_graph_rejects_asymmetric_rows():
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))
