"""Intersection arrays, exact spectra and geometricity of distance-regular graphs."""
from .arrays import (
    ArrayParseError,
    IntersectionArray,
    NonIntegralError,
    basic_feasibility,
    derive,
    format_array,
    parse_array,
)
from .enumerator import SearchSpec, classify, enumerate_arrays, evaluate_array, shard
from .geometric import (
    check_tau_psi,
    classify_equal_psi_tau,
    forcing_test,
    metsch_conditions,
    solve_geometric_parameters,
)
from .spectra import Spectrum, eigenvalues, multiplicity, sign_changes, standard_sequence

__version__ = "0.1.0"

__all__ = [
    "ArrayParseError",
    "IntersectionArray",
    "NonIntegralError",
    "SearchSpec",
    "Spectrum",
    "basic_feasibility",
    "check_tau_psi",
    "classify",
    "classify_equal_psi_tau",
    "derive",
    "eigenvalues",
    "enumerate_arrays",
    "evaluate_array",
    "forcing_test",
    "format_array",
    "metsch_conditions",
    "multiplicity",
    "parse_array",
    "shard",
    "sign_changes",
    "solve_geometric_parameters",
    "standard_sequence",
]
