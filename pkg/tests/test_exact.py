"""Exact scalars: parsing, printing, substitution, factoring and matrices."""

from fractions import Fraction

import pytest

from supergrade.errors import CyclicBindingError, DimensionMismatch, ParametricRankError, PreconditionError, ScalarParseError
from supergrade.exact import (
    MatrixQ,
    Poly,
    canonical_equation,
    determinant,
    evaluate,
    format_scalar,
    linear_factors,
    nullspace,
    parse_scalar,
    poly_subst,
    row_reduce,
)


@pytest.mark.parametrize("text, expected", [
    ("-3/2", "-3/2"),
    ("a1*a3 - 2*c", "a1*a3 - 2*c"),
    ("(g1 + g3)^2", "g1^2 + 2*g1*g3 + g3^2"),
    ("2*a - a - a", "0"),
])
def test_parse_then_format(text, expected):
    assert format_scalar(parse_scalar(text)) == expected


@pytest.mark.parametrize("text", ["2a", "a b", "a(b)", "", "a + $"])
def test_parse_rejects_malformed(text):
    with pytest.raises(ScalarParseError):
        parse_scalar(text)


def test_parse_error_reports_column():
    with pytest.raises(ScalarParseError, match="column 3"):
        parse_scalar("a $")


def test_arithmetic_is_exact():
    a, b = Poly.var("a"), Poly.var("b")
    p = (a + b) * (a - b)
    assert p == parse_scalar("a^2 - b^2")
    assert (p / 3).terms[(("a", 2),)] == Fraction(1, 3)
    assert p.degree() == 2 and Poly().degree() == -1


def test_division_by_parameter_is_refused():
    with pytest.raises(PreconditionError):
        Poly.var("a") / Poly.var("b")


def test_subst_resolves_chains():
    p = poly_subst("a + b", {"a": "b + 1", "b": "c"})
    assert p == parse_scalar("2*c + 1")


def test_cyclic_bindings():
    with pytest.raises(CyclicBindingError):
        poly_subst("a", {"a": "b", "b": "a"})


def test_evaluate_needs_every_variable():
    assert evaluate("a*b + 1/2", {"a": 2, "b": Fraction(1, 4)}) == 1
    with pytest.raises(PreconditionError, match="b"):
        evaluate("a*b", {"a": 1})


def test_canonical_equation():
    assert canonical_equation(parse_scalar("-a/2 + c/4")) == parse_scalar("2*a - c")


def test_linear_factors():
    split = linear_factors("2*a2*c - 4*a2*a1")
    assert split.constant == -4
    assert [format_scalar(f) for f, _ in split.factors] == ["a1 - 1/2*c", "a2"]
    assert split.residual == 1

    irreducible = linear_factors("a^2 + b^2")
    assert irreducible.factors == [] and irreducible.residual == parse_scalar("a^2 + b^2")


def test_rank_and_nullspace():
    m = MatrixQ.from_rows([[1, 2, 3], [2, 4, 6]])
    assert row_reduce(m).rank == 1
    kernel = nullspace(m)
    assert len(kernel) == 2
    for vec in kernel:
        assert sum(Fraction(c) * v for c, v in zip((1, 2, 3), vec)) == 0


def test_parametric_rank_needs_nonzero_assumption():
    m = MatrixQ.from_rows([["a", 1], [0, 2]])
    with pytest.raises(ParametricRankError):
        row_reduce(MatrixQ.from_rows([["a"], ["b"]]))
    assert row_reduce(m, assume_nonzero=["a"]).rank == 2


def test_determinant():
    assert determinant(MatrixQ.from_rows([["a", 1], [1, "a"]])) == parse_scalar("a^2 - 1")
    with pytest.raises(DimensionMismatch):
        determinant(MatrixQ.from_rows([[1, 2]]))
