import pytest
from hypothesis import given
from hypothesis import strategies as st

from drgeom.arrays import (
    ArrayParseError,
    IntersectionArray,
    NonIntegralError,
    basic_feasibility,
    derive,
    format_array,
    parse_array,
)


@st.composite
def raw_arrays(draw):
    D = draw(st.integers(1, 5))
    b = draw(st.lists(st.integers(1, 50), min_size=D, max_size=D))
    c = [1] + draw(st.lists(st.integers(1, 50), min_size=D - 1, max_size=D - 1))
    return IntersectionArray(tuple(b), tuple(c))


@given(raw_arrays())
def test_format_parse_round_trip(ia):
    assert parse_array(format_array(ia)) == ia


@given(raw_arrays())
def test_parse_tolerates_whitespace_and_missing_braces(ia):
    text = format_array(ia)
    spaced = text.replace(",", " , ").replace(";", " ; ")
    assert parse_array(spaced) == ia
    assert parse_array(text[1:-1]) == ia


@pytest.mark.parametrize("text", ["", "{}", "{3,2;1}", "{3,2;1,x}", "{3;0}", "{3,2;2,1}", "{3,-2;1,1}"])
def test_parse_rejects(text):
    with pytest.raises(ArrayParseError):
        parse_array(text)


def test_unequal_lengths_named_in_message():
    with pytest.raises(ArrayParseError, match="unequal"):
        parse_array("{3,2,1;1,1}")


@pytest.mark.parametrize(
    "text, kseq, a",
    [
        ("{3,2;1,1}", (1, 3, 6), (0, 2)),
        ("{6,4,2;1,2,3}", (1, 6, 12, 8), (1, 2, 3)),
        ("{9,6,3;1,2,3}", (1, 9, 27, 27), (2, 4, 6)),
        ("{2,1;1,1}", (1, 2, 2), (0, 1)),
        ("{5;1}", (1, 5), (4,)),
    ],
)
def test_derived_quantities(text, kseq, a):
    d = derive(parse_array(text))
    assert d.kseq == kseq
    assert d.a == a
    assert d.n == sum(kseq)


def test_accessor_conventions():
    ia = parse_array("{6,4,2;1,2,3}")
    assert ia.b_at(3) == 0 and ia.c_at(0) == 0
    assert ia.a_at(0) == 0
    assert ia.c2 == 2 and ia.a1 == 1 and ia.D == 3 and ia.k == 6
    assert ia.tridiagonal() == [[0, 6, 0, 0], [1, 1, 4, 0], [0, 2, 2, 2], [0, 0, 3, 3]]


def test_row_sums_of_intersection_matrix_equal_k():
    ia = parse_array("{9,6,3;1,2,3}")
    assert all(sum(row) == ia.k for row in ia.tridiagonal())


def test_nonintegral_kseq_raises_with_index():
    ia = parse_array("{3,2;1,4}")
    with pytest.raises(NonIntegralError) as info:
        ia.kseq
    assert info.value.index == 2


def test_feasible_arrays_have_no_violations():
    for text in ("{3,2;1,1}", "{6,4,2;1,2,3}", "{36,25,16;1,4,18}", "{2,1;1,1}"):
        assert basic_feasibility(parse_array(text)) == []


def test_violations_listed_in_fixed_order():
    kinds = [v.kind for v in basic_feasibility(parse_array("{3,3;1,1}"))]
    assert kinds == ["b-monotone", "a-sign"]
    kinds = [v.kind for v in basic_feasibility(parse_array("{4,2,1;1,3,3}"))]
    assert kinds == ["cross", "integrality"]


@given(raw_arrays())
def test_feasibility_never_raises(ia):
    out = basic_feasibility(ia)
    assert all(v.kind in {"b-monotone", "c-monotone", "cross", "a-sign", "integrality"} for v in out)
