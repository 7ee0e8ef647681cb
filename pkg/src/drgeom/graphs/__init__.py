"""Concrete-graph engine: generators, regularity checks, cliques and covers."""
from .cliques import (
    CliqueCover,
    NonGeometricCertificate,
    SearchCapExceeded,
    count_geometric_covers,
    delsarte_cliques,
    geometric_cover,
    maximal_cliques,
)
from .codes import (
    CodeProfile,
    clique_extension,
    detect_clique_extension,
    distance_partition,
    is_completely_regular,
    is_equitable,
    outer_distribution,
)
from .core import (
    DistanceData,
    Graph,
    GraphError,
    Witness,
    adjacency_spectrum_numeric,
    cartesian_product,
    complement,
    diameter,
    distance_data,
    format_graph,
    has_induced_quadrangle,
    induced_subgraph,
    is_antipodal,
    is_distance_regular,
    is_terwilliger,
    local_graph,
    parse_graph,
    read_graph,
    write_graph,
)
from .families import FAMILIES, generate
