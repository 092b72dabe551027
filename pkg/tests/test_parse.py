"""Grammar conformance, parse errors, and printing round-trips."""

from fractions import Fraction

import pytest

from primespec import (ConfigError, Polynomial, PolynomialSyntaxError, UnknownVariableError,
                       context, parse_polynomial)
from primespec.parse import parse_ideal_source

from conftest import random_polynomial, seeded


@pytest.fixture
def ty():
    return context(("Y",), params=("T",))


def test_basic_difference(ty):
    p = parse_polynomial("Y^2 - T", ty)
    assert p.terms == {(0, 2): Fraction(1), (1, 0): Fraction(-1)}


def test_comma_is_a_syntax_error(ty):
    with pytest.raises(PolynomialSyntaxError) as err:
        parse_polynomial("Y - X, Y - X^2", ty)
    assert err.value.position is not None


def test_parenthesized_power():
    ctx = context(("Y1", "Y2"))
    p = parse_polynomial("(Y1+Y2)^2", ctx)
    assert p.terms == {(2, 0): Fraction(1), (1, 1): Fraction(2), (0, 2): Fraction(1)}


def test_unknown_variable_named(ty):
    with pytest.raises(UnknownVariableError) as err:
        parse_polynomial("Y + W", ty)
    assert err.value.name == "W"


def test_rationals_and_juxtaposition(ty):
    assert parse_polynomial("1/2 Y", ty) == Polynomial.variable(ty, "Y") * Fraction(1, 2)
    assert parse_polynomial("2Y", ty) == Polynomial.variable(ty, "Y") * 2
    assert parse_polynomial("3(Y + 1)", ty) == parse_polynomial("3Y + 3", ty)
    assert parse_polynomial("Y T", ty) == parse_polynomial("T*Y", ty)


def test_unary_minus(ty):
    assert parse_polynomial("-T", ty) == -Polynomial.variable(ty, "T")
    assert parse_polynomial("-2^2", ty) == Polynomial.constant(ty, -4)


def test_power_binds_tighter_than_product(ty):
    assert parse_polynomial("2Y^2", ty) == parse_polynomial("2*(Y^2)", ty)


def test_bad_exponent_rejected(ty):
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("Y^(2)", ty)
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("Y^-2", ty)


def test_stray_slash_rejected(ty):
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial("Y/2", ty)


def test_print_parse_roundtrip_on_random(ty):
    rng = seeded(7)
    for _ in range(100):
        p = random_polynomial(ty, rng)
        assert parse_polynomial(str(p), ty) == p


def test_zero_prints_and_parses(ty):
    assert str(Polynomial.zero(ty)) == "0"
    assert parse_polynomial("0", ty).is_zero


def test_ideal_file_roundtrip():
    source = """
    # a parametrized curve
    params: T
    vars: Y1, Y2

    gens:
    Y2 - T*Y1^2   # fiber over T
    Y1 - 1
    """
    ctx, gens = parse_ideal_source(source)
    assert ctx.param_names == ("T",)
    assert ctx.var_names == ("Y1", "Y2")
    assert len(gens) == 2


def test_ideal_file_requires_sections():
    with pytest.raises(ConfigError):
        parse_ideal_source("vars: Y\n")
    with pytest.raises(ConfigError):
        parse_ideal_source("gens:\nY\n")
    with pytest.raises(ConfigError):
        parse_ideal_source("vars: Y\ngens:\nY +\n")
