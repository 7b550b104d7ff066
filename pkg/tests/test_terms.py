import pytest
from hypothesis import given, settings

from omlkit.terms import (
    EQ,
    LE,
    Arrow,
    Commutes,
    Comp,
    EmptyConclusion,
    EquationSyntaxError,
    Join,
    Meet,
    Orthogonal,
    Var,
    expand_arrows,
    format_equation,
    format_term,
    parse_equation,
    parse_term,
    substitute,
)

from strategies import equations, terms

a, b, c = Var("a"), Var("b"), Var("c")


def test_precedence():
    assert parse_term("a v b ^ c") == Join(a, Meet(b, c))
    assert parse_term("a -> b v c") == Arrow(a, Join(b, c))
    assert parse_term("a' ^ b") == Meet(Comp(a), b)
    assert parse_term("(a v b)'") == Comp(Join(a, b))


def test_left_associative():
    assert parse_term("a -> b -> c") == Arrow(Arrow(a, b), c)
    assert parse_term("a v b v c") == Join(Join(a, b), c)
    assert format_term(Arrow(a, Arrow(b, c))) == "a -> (b -> c)"


def test_lone_v_is_join():
    assert parse_term("a v b") == Join(a, b)
    assert parse_term("v1 ^ a") == Meet(Var("v1"), a)


def test_equation_with_hypotheses():
    eq = parse_equation("a # b, b C c |- a v b <= c'")
    assert eq.hypotheses == (Orthogonal(a, b), Commutes(b, c))
    assert eq.relation == LE
    assert eq.variables == ("a", "b", "c")
    assert str(eq) == "a # b, b C c |- a v b <= c'"


def test_plain_equation():
    eq = parse_equation("a ^ a' == 0")
    assert eq.hypotheses == () and eq.relation == EQ
    assert format_equation(eq) == "|- a ^ a' == 0"
    assert parse_equation("|- a ^ a' == 0") == eq


@pytest.mark.parametrize(
    "text, err",
    [
        ("a # b |-", EmptyConclusion),
        ("", EmptyConclusion),
        ("a <=", EquationSyntaxError),
        ("a ^ b", EquationSyntaxError),
        ("a b <= c", EquationSyntaxError),
        ("a @ b <= c", EquationSyntaxError),
        ("a <= b)", EquationSyntaxError),
        ("a |- a <= a", EquationSyntaxError),
    ],
)
def test_syntax_errors(text, err):
    with pytest.raises(err):
        parse_equation(text)


def test_error_position():
    with pytest.raises(EquationSyntaxError) as ei:
        parse_equation("a <= b @")
    assert ei.value.position == 7


def test_expand_and_substitute():
    t = Arrow(a, b)
    assert expand_arrows(t) == Join(Comp(a), Meet(a, b))
    assert substitute(t, {"a": c}) == Arrow(c, b)


@settings(max_examples=300, deadline=None)
@given(terms())
def test_term_round_trip(t):
    assert parse_term(format_term(t)) == t


@settings(max_examples=200, deadline=None)
@given(equations())
def test_equation_round_trip(eq):
    assert parse_equation(format_equation(eq)) == eq
