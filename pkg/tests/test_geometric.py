from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drgeom.arrays import IntersectionArray, parse_array
from drgeom.geometric import (
    FORCED_GEOMETRIC,
    INCONSISTENT,
    NOT_FORCED,
    GeometricPreconditionError,
    GeometricSolution,
    Infeasible,
    PartialGeometryOrder,
    check_tau_psi,
    classify_equal_psi_tau,
    delsarte_clique_size,
    folded_johnson_array,
    forcing_test,
    grassmann_array,
    hamming_array,
    is_prime_power,
    johnson_array,
    metsch_conditions,
    partial_geometry_array,
    pg_classify,
    smallest_eigenvalue_is,
    solve_geometric_parameters,
)
from drgeom.spectra import ExactEigenvalue, Spectrum, eigenvalues


@pytest.mark.parametrize(
    "text, m, tau, psi",
    [
        ("{6,4,2;1,2,3}", 3, (1, 2, 3), (1, 1, 1)),
        ("{6,2;1,4}", 2, (1, 2), (1, 2)),
        ("{6,3;1,2}", 2, (1, 2), (1, 1)),
        ("{12,6,2;1,4,9}", 3, (1, 2, 3), (1, 2, 3)),
        ("{18,8;1,9}", 3, (1, 3), (1, 3)),
        ("{36,25,16;1,4,18}", 6, (1, 2, 6), (1, 2, 3)),
    ],
)
def test_solver_values(text, m, tau, psi):
    sol = solve_geometric_parameters(parse_array(text), m)
    assert isinstance(sol, GeometricSolution)
    assert (sol.tau, sol.psi) == (tau, psi)


def test_solver_preconditions():
    with pytest.raises(GeometricPreconditionError, match="does not divide"):
        solve_geometric_parameters(parse_array("{3,2;1,1}"), 2)
    with pytest.raises(GeometricPreconditionError, match="smallest eigenvalue"):
        solve_geometric_parameters(parse_array("{6,4,2;1,2,3}"), 2)


def test_solution_with_tau2_below_psi1():
    ia = parse_array("{12,4,3;1,3,8}")
    assert smallest_eigenvalue_is(ia, -2)
    res = solve_geometric_parameters(ia, 2)
    assert (res.tau, res.psi) == ((1, 1, 2), (1, 3, 4))
    assert res.reproduce() == ia
    assert check_tau_psi(res, ia).certified_non_geometric


def test_solver_infeasible_names_index():
    ia = parse_array("{6,5,2;1,1,3}")
    assert smallest_eigenvalue_is(ia, -3)
    res = solve_geometric_parameters(ia, 3)
    assert isinstance(res, Infeasible) and not res
    assert res.index == 1 and "5/2" in str(res)


FAMILY_ARRAYS = (
    [(hamming_array(d, q), q - 1 if q > 2 else None) for d in (2, 3, 4) for q in (2, 3, 4, 5)]
    + [(johnson_array(n, e), None) for n in range(5, 12) for e in range(2, n // 2 + 1)]
    + [(grassmann_array(q, n, d), None) for q in (2, 3) for n in (4, 5, 6) for d in range(2, n // 2 + 1)]
    + [(folded_johnson_array(s), None) for s in (4, 6, 8)]
)


@pytest.mark.parametrize("ia, _", FAMILY_ARRAYS, ids=lambda v: str(v) if isinstance(v, IntersectionArray) else "")
def test_family_arrays_are_pseudo_geometric_and_round_trip(ia, _):
    spec = eigenvalues(ia)
    th = spec.theta_min
    assert th.is_integer
    m = -th.value
    if m < 2:
        pytest.skip("smallest eigenvalue -1")
    sol = solve_geometric_parameters(ia, m, spec)
    assert sol, sol
    assert sol.reproduce() == ia
    chk = check_tau_psi(sol, ia)
    assert not chk.certified_non_geometric


@given(st.integers(2, 6), st.integers(2, 6))
def test_round_trip_on_hamming(d, q):
    ia = hamming_array(d, q)
    m = d
    if q == 2:
        return
    sol = solve_geometric_parameters(ia, m)
    assert sol.reproduce() == ia
    assert sol.s == q - 1


def test_solution_is_unique_given_first_step():
    # c_1 = 1 = tau_1 psi_0 leaves psi_0 = 1 as the only integer option
    ia = parse_array("{6,4,2;1,2,3}")
    for psi0 in range(2, 5):
        assert ia.c_at(1) % psi0 != 0


def test_tau_psi_check():
    ia = parse_array("{6,2;1,4}")
    assert check_tau_psi(solve_geometric_parameters(ia, 2), ia).tau2_ge_psi1
    hyp = GeometricSolution(m=2, s=3, tau=(1, 1), psi=(1, 2))
    assert check_tau_psi(hyp, parse_array("{6,2;1,2}")).certified_non_geometric
    gate = check_tau_psi(GeometricSolution(m=2, s=2, tau=(1, 1), psi=(1, 1)), parse_array("{4,2;1,1}"))
    assert not gate.applicable


def test_delsarte_clique_size():
    assert delsarte_clique_size(parse_array("{3,2;1,1}")) == Fraction(5, 2)
    assert delsarte_clique_size(parse_array("{6,4,2;1,2,3}")) == 3
    assert delsarte_clique_size(parse_array("{9,6,3;1,2,3}")) == 4
    size = delsarte_clique_size(parse_array("{2,1;1,1}"))
    assert float(size.mid) == pytest.approx(5**0.5, abs=1e-10)


@pytest.mark.parametrize(
    "args, threshold, i, ii",
    [((34, 17, 4, 2), 16, True, True), ((3, 0, 1, 2), 2, True, False), ((6, 1, 2, 3), 1, False, True)],
)
def test_metsch(args, threshold, i, ii):
    res = metsch_conditions(*args)
    assert res.line_size_threshold == threshold
    assert res.cond_i is i
    if args[0] != 6:
        assert res.cond_ii is ii


def test_forcing():
    ia = parse_array("{34,16;1,4}")
    assert forcing_test(ia, eigenvalues(ia), 2) == FORCED_GEOMETRIC
    ia = parse_array("{6,3;1,2}")
    assert forcing_test(ia, eigenvalues(ia), 2) == NOT_FORCED


def test_forcing_inconsistent_on_irrational_smallest_eigenvalue():
    # a synthetic spectrum placing theta_D strictly inside (-2, -1) with a1 = 17 > 4 c2
    ia = parse_array("{34,16;1,4}")
    real = eigenvalues(ia)
    fake = ExactEigenvalue.isolated((-2, 0, 1), Fraction(-3, 2), Fraction(-7, 5))  # -sqrt 2
    spec = Spectrum(ia, real.eigs[:-1] + (fake,), real.mults)
    assert forcing_test(ia, spec, 2) == INCONSISTENT


@pytest.mark.parametrize(
    "order, k, b1, c2, v, eigs",
    [((2, 2, 1), 6, 4, 3, 15, (6, 1, -3)), ((2, 1, 1), 4, 2, 2, 9, (4, 1, -2)), ((1, 1, 1), 2, 1, 2, 4, (2, 0, -2))],
)
def test_partial_geometry_arrays(order, k, b1, c2, v, eigs):
    res = partial_geometry_array(PartialGeometryOrder(*order))
    assert (res.array.k, res.array.b[1], res.array.c[1], res.v, res.eigenvalues) == (k, b1, c2, v, eigs)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 7))
def test_partial_geometry_spectrum_property(s, t, alpha):
    if alpha > min(s + 1, t + 1):
        with pytest.raises(ValueError):
            PartialGeometryOrder(s, t, alpha)
        return
    try:
        res = partial_geometry_array(PartialGeometryOrder(s, t, alpha))
    except ValueError:
        return  # non-integral vertex count
    if res.array.D == 2:
        spec = eigenvalues(res.array)
        assert tuple(e.value for e in spec.eigs) == res.eigenvalues


def test_partial_geometry_second_eigenvalue_depends_on_alpha():
    # pg(2,1,2) has point graph K_{3x2}, spectrum 4, 0, -2
    res = partial_geometry_array(PartialGeometryOrder(2, 1, 2))
    assert res.array == parse_array("{4,1;1,4}")
    assert res.eigenvalues == (4, 0, -2) and res.v == 6


def test_pg_classify():
    assert pg_classify(PartialGeometryOrder(3, 2, 3)) == "latin_square"
    assert pg_classify(PartialGeometryOrder(2, 2, 2)) == "steiner"
    assert pg_classify(PartialGeometryOrder(2, 2, 1)) == "other"


def test_equal_psi_tau_johnson_case():
    ia = parse_array("{12,6,2;1,4,9}")
    rep = classify_equal_psi_tau(solve_geometric_parameters(ia, 3), ia)
    assert rep.applicable
    assert rep.candidates == ("johnson", "folded_johnson")
    assert rep.cases[0]["array_match"] and rep.cases[0]["n"] == 7


def test_equal_psi_tau_grassmann_case_for_srg():
    ia = grassmann_array(2, 4, 2)
    assert ia == parse_array("{18,8;1,9}")
    rep = classify_equal_psi_tau(solve_geometric_parameters(ia, 3), ia)
    assert not rep.applicable and rep.note
    grass = rep.cases[0]
    assert grass["case"] == "grassmann" and grass["q"] == 2 and grass["array_match"]


def test_equal_psi_tau_small_case_excluded_by_valency():
    hyp = GeometricSolution(m=5, s=20, tau=(1, 4, 5), psi=(1, 4, 5))
    ia = IntersectionArray((100, 64, 1), (1, 16, 25))
    rep = classify_equal_psi_tau(hyp, ia)
    assert rep.candidates == ("grassmann",)
    assert rep.cases[1]["bound"] == 60


def test_equal_psi_tau_not_applicable_when_unequal():
    ia = parse_array("{6,4,2;1,2,3}")
    assert not classify_equal_psi_tau(solve_geometric_parameters(ia, 3), ia).applicable


def test_folded_johnson_array_shape():
    assert folded_johnson_array(6) == parse_array("{36,25,16;1,4,18}")
    assert folded_johnson_array(4) == parse_array("{16,9;1,8}")


def test_prime_powers():
    assert [q for q in range(1, 30) if is_prime_power(q)] == [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29]
