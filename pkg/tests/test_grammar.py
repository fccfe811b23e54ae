import pytest
from hypothesis import given, strategies as st

from frobhecke.errors import GrammarError, InverseDotInDegenerate, UnknownLabel, VariantMismatch
from frobhecke.frobenius import builtin
from frobhecke.grammar import (
    format_diagram,
    format_poly,
    format_wreath,
    parse_diagram,
    parse_label,
    parse_object,
    parse_poly,
    parse_wreath,
)
from frobhecke.polyalg import QUANTUM, PolyElement, poly_ring
from frobhecke.wreath import wreath_ring

from conftest import BUILTIN_NAMES


def test_dot_on_one_strand():
    A = builtin("ground")
    assert parse_poly("1*(1) x1", A) == poly_ring(A, 1).x(1)


def test_token_times_crossing():
    A = builtin("clifford_even")
    W = wreath_ring(A, 2)
    assert parse_wreath("1*(c|1) s1", A) == W.token(1, "c") * W.crossing(1)


def test_unknown_label():
    with pytest.raises(UnknownLabel):
        parse_poly("1*(q)", builtin("ground"))


def test_syntax_error_reports_position():
    with pytest.raises(GrammarError) as err:
        parse_poly("1*(1) x1 ^", builtin("ground"))
    assert "position" in str(err.value)


def test_variant_checks():
    A = builtin("ground")
    with pytest.raises(VariantMismatch):
        parse_poly("1*(1) X1", A)
    with pytest.raises(InverseDotInDegenerate):
        parse_diagram("idot@1", A)
    with pytest.raises(VariantMismatch):
        parse_wreath("1*(1|1) T1", A)
    assert parse_poly("1*(1) X1^-2", A, QUANTUM) == poly_ring(A, 1, QUANTUM).x(1, -2)


def test_rationals_and_zero():
    A = builtin("ground")
    f = parse_poly("3/2*(1|1) x1^2 x2 - 1/3*(1|1)", A)
    assert format_poly(f) == "-1/3*(1|1) + 3/2*(1|1) x1^2 x2"
    assert parse_poly("0", A, n=2).is_zero()


def test_label_shorthand():
    A = builtin("ground")
    assert format_poly(parse_label("x^2 - 3/2", A)) == "-3/2*(1) + 1*(1) x1^2"
    q = parse_label("X+X^-1+2", A, QUANTUM)
    R = q.ring
    assert q == R.x(1) + R.x(1, -1) + 2


def test_objects_and_diagrams():
    A = builtin("clifford_even")
    assert parse_object("[. Q1 . Q2]") == (0, 1, 0, 2)
    with pytest.raises(GrammarError):
        parse_object(". Q1")
    text = "xBR@1; s@2; tok(c)@1; dot@3; xRB@2"
    assert format_diagram(parse_diagram(text, A), A) == text


@st.composite
def poly_text(draw, name):
    A = builtin(name)
    R = poly_ring(A, 2)
    terms = {}
    for _ in range(draw(st.integers(0, 3))):
        w = tuple(draw(st.integers(0, A.dim - 1)) for _ in range(2))
        e = tuple(draw(st.integers(0, 3)) for _ in range(2))
        terms[(w, e)] = draw(st.fractions(-5, 5, max_denominator=4))
    return PolyElement(R, terms)


@given(st.sampled_from(BUILTIN_NAMES).flatmap(poly_text))
def test_poly_round_trip(f):
    text = format_poly(f)
    g = parse_poly(text, f.ring.A, n=2)
    assert g == f
    assert format_poly(g) == text


@given(st.sampled_from(BUILTIN_NAMES), st.integers(0, 3), st.sampled_from([(0, 1), (1, 0)]))
def test_wreath_round_trip(name, k, w):
    A = builtin(name)
    W = wreath_ring(A, 2)
    u = W.from_terms([(((k % A.dim, 0), (k, 1), w), 2), (((0, 0), (0, 0), (0, 1)), -1)])
    assert parse_wreath(format_wreath(u), A, n=2) == u
