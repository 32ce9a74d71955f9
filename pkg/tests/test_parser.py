from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from eiscong.errors import ParseError
from eiscong.parser import parse_expression, parse_polynomial, parse_value, tokenize
from eiscong.polyfield import IntPoly, RatFunc

from test_polyfield import ratfuncs


def test_integral_polynomial():
    v = parse_value("2*t^2 - 2*t")
    assert isinstance(v, IntPoly)
    assert v == IntPoly([0, -2, 2])


def test_cancels_to_t():
    assert parse_expression("(t - t^3)/(1 - t^2)") == RatFunc.t()


def test_implicit_multiplication_rejected():
    with pytest.raises(ParseError) as exc:
        parse_expression("2t")
    assert exc.value.pos == 1
    assert "offset 1" in str(exc.value)


@pytest.mark.parametrize(
    "src, value",
    [
        ("1 - 2 - 3", -4),
        ("12 / 2 / 3", 2),
        ("-2^2", -4),
        ("(-2)^2", 4),
        ("2*3^2", 18),
        ("+7", 7),
        ("1/2 + 1/3", Fraction(5, 6)),
    ],
)
def test_precedence_and_associativity(src, value):
    assert parse_expression(src) == RatFunc.const(value)


@pytest.mark.parametrize(
    "src, pos",
    [("t +", 3), ("(t", 2), ("t ^ t", 4), ("t^2^3", 3), ("3 $ 4", 2), ("", 0), ("t)", 1)],
)
def test_syntax_errors_carry_position(src, pos):
    with pytest.raises(ParseError) as exc:
        parse_expression(src)
    assert exc.value.pos == pos


def test_division_by_zero_function():
    with pytest.raises(ParseError):
        parse_expression("1/(t - t)")


def test_parse_polynomial_rejects_fractions():
    with pytest.raises(ParseError):
        parse_polynomial("t/2")
    assert parse_polynomial("(t^2 - 1)/(t - 1)") == IntPoly([1, 1])


def test_tokens():
    kinds = [tok.kind for tok in tokenize("12*t^3")]
    assert kinds == ["int", "*", "t", "^", "int", "end"]


@settings(max_examples=80, deadline=None)
@given(ratfuncs())
def test_print_parse_round_trip(h):
    again = parse_expression(str(h))
    assert again == h
    assert (again.num, again.den) == (h.num, h.den)
