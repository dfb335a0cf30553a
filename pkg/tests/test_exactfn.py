from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conflap.errors import ContextMismatch, ParseError, PoleError
from conflap.exactfn import (
    Polynomial,
    RadicalElement,
    RationalFunction,
    equals,
    evaluate,
    evaluate_float,
    is_zero,
    laplacian,
    monomials,
    parse_polynomial,
    partial_derivative,
    ring_op,
)

from strategies import polynomials, rationals

Y = sympy.symbols("y1:5")


def y(i, n=2):
    return Polynomial.variable(n, i)


def to_sympy(f):
    """Independent conversion used as an oracle."""
    if isinstance(f, Polynomial):
        out = sympy.Integer(0)
        for exps, c in f.terms.items():
            term = sympy.Rational(c.numerator, c.denominator) if isinstance(c, Fraction) else sympy.Integer(c)
            for v, e in zip(Y, exps):
                term *= v**e
            out += term
        return out
    den = sympy.Integer(1)
    for base, e in f.den_factors.items():
        den *= to_sympy(base) ** e
    return to_sympy(f.num) / den


# -- ring operations -----------------------------------------------------


def test_difference_of_squares():
    assert (y(1, 1) + 1) * (y(1, 1) - 1) == y(1, 1) ** 2 - 1


def test_radical_square_is_base():
    u = Polynomial.variable(3, 3) + 1
    s = RadicalElement.sqrt(u)
    assert equals(s * s, u)


def test_radical_inverse_is_s_over_u():
    u = Polynomial.variable(3, 3) + 1
    inv = RadicalElement.sqrt(u) ** -1
    assert isinstance(inv, RadicalElement)
    assert is_zero(inv.a)
    assert equals(inv.b, 1 / u)


def test_ring_op_dispatch():
    a, b = y(1), y(2)
    assert ring_op(a, b, "add") == a + b
    assert ring_op(a, b, "sub") == a - b
    assert ring_op(a, None, "neg") == -a
    assert ring_op(a, 3, "intpow") == a**3
    assert equals(ring_op(a * b, b, "div"), a)


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        y(1) / Polynomial.constant(2, 0)


def test_mismatched_contexts():
    with pytest.raises(ContextMismatch):
        y(1, 2) + y(1, 3)
    s = RadicalElement.sqrt(y(1) + 1)
    t = RadicalElement.sqrt(y(2) + 1)
    with pytest.raises(ContextMismatch):
        s + t


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        y(1) * 0.5


@given(polynomials(2), polynomials(2))
def test_polynomial_product_matches_sympy(f, g):
    assert sympy.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0
    assert sympy.expand(to_sympy(f - g) - to_sympy(f) + to_sympy(g)) == 0


@given(rationals(2), rationals(2))
def test_rational_sum_matches_sympy(f, g):
    got = to_sympy(f + g) if not isinstance(f + g, (int, Fraction)) else f + g
    assert sympy.simplify(got - to_sympy(f) - to_sympy(g)) == 0


@given(polynomials(3), polynomials(3, max_degree=2))
def test_exact_div_inverts_multiplication(f, g):
    if g.is_zero():
        return
    assert (f * g).exact_div(g) == f


def test_exact_div_reports_inexact():
    assert (y(1) ** 2 + 1).exact_div(y(1) + 1) is None


# -- derivatives ---------------------------------------------------------


def test_power_rule():
    assert partial_derivative(y(1) ** 2 * y(2), 1) == y(1) * y(2) * 2


def test_quotient_rule():
    y1 = y(1, 1)
    f = 1 / (1 + y1**2)
    assert equals(partial_derivative(f, 1), -2 * y1 / (1 + y1**2) ** 2)


def test_radical_derivative():
    u = Polynomial.variable(4, 4) + 1
    s = RadicalElement.sqrt(u)
    want = s / (u * 2)
    assert equals(partial_derivative(s, 4), want)
    assert is_zero(partial_derivative(s, 1))


@given(rationals(3))
def test_derivative_matches_sympy(f):
    for i in (1, 2, 3):
        d = partial_derivative(f, i)
        got = to_sympy(d) if isinstance(d, (Polynomial, RationalFunction)) else d
        assert sympy.simplify(got - sympy.diff(to_sympy(f), Y[i - 1])) == 0


def test_laplacian_of_sum_of_squares():
    assert laplacian(Polynomial.sum_of_squares(3)) == 6


# -- equality ------------------------------------------------------------


def test_cancellation_equality():
    y1 = y(1, 1)
    assert equals((y1**2 - 1) / (y1 - 1), y1 + 1)


def test_distinct_variables_differ():
    assert not equals(y(1), y(2))


def test_nonzero_radical_component():
    u = Polynomial.variable(3, 3) + 1
    assert not equals(RadicalElement(0, 1, u), 0)


@given(rationals(2), rationals(2), rationals(2))
def test_equals_is_an_equivalence(f, g, h):
    assert equals(f, f)
    assert equals(f, g) == equals(g, f)
    if equals(f, g) and equals(g, h):
        assert equals(f, h)


# -- evaluation ----------------------------------------------------------


def test_evaluate_rational():
    y1 = y(1, 1)
    assert evaluate(1 / (1 + y1**2), [1]) == Fraction(1, 2)


def test_evaluate_pole():
    y1 = y(1, 1)
    with pytest.raises(PoleError):
        evaluate(y1 / (y1 - 1), [1])


def test_evaluate_radical():
    u = Polynomial.variable(3, 3) + 1
    x = RadicalElement(2, 3, u)
    assert evaluate(x, [0, 0, 0], radical_value=1) == 5


def test_evaluate_radical_checks_root():
    u = Polynomial.variable(3, 3) + 1
    with pytest.raises(ValueError):
        evaluate(RadicalElement(2, 3, u), [0, 0, 0], radical_value=2)


@given(rationals(2), rationals(2), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_evaluate_is_a_homomorphism(f, g, p):
    p = [Fraction(v, 3) for v in p]
    assert evaluate(f * g, p) == evaluate(f, p) * evaluate(g, p)
    assert evaluate(f - g, p) == evaluate(f, p) - evaluate(g, p)


def test_evaluate_float_radical_uses_positive_root():
    u = Polynomial.variable(1, 1) + 1
    assert evaluate_float(RadicalElement.sqrt(u), [3.0]) == pytest.approx(2.0)


# -- radicals ------------------------------------------------------------


@given(polynomials(2, 2), polynomials(2, 2))
def test_radical_inverse_consistency(a, b):
    u = Polynomial.sum_of_squares(2) + 1
    x = RadicalElement(a, b, u)
    if is_zero(x.norm()):
        return
    assert equals(x * x.inverse(), 1)


def test_nested_radical_rejected():
    s = RadicalElement.sqrt(y(1) + 1)
    with pytest.raises((ContextMismatch, TypeError, ValueError)):
        RadicalElement.sqrt(s)


# -- monomials and formatting ----------------------------------------------


def test_monomial_count():
    # C(n + d, d) monomials of degree <= d
    assert len(monomials(3, 4)) == 35
    assert len(monomials(2, 0)) == 1


def test_format_roundtrip():
    f = y(1) ** 2 * y(2) + y(1) * Fraction(3, 2)
    assert parse_polynomial(f.format(), 2) == f


# -- parser --------------------------------------------------------------


def test_parse_grammar_example():
    f = parse_polynomial("y1^2*y2 + 3/2*y1", 2)
    assert f == y(1) ** 2 * y(2) + y(1) * Fraction(3, 2)


def test_parse_leading_sign_and_whitespace():
    assert parse_polynomial(" - 2 * x1 ^ 3 + 1", 1) == Polynomial.variable(1, 1) ** 3 * -2 + 1


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        parse_polynomial("y1 + * y2", 2)
    assert info.value.pos == 5
    assert "^" in str(info.value)


def test_parse_variable_out_of_range():
    with pytest.raises(ParseError):
        parse_polynomial("y3", 2)


@given(polynomials(3))
def test_parse_format_roundtrip(f):
    assert parse_polynomial(f.format(), 3) == f
