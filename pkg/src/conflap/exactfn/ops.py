"""Free functions over any function element (polynomial, rational, radical)."""

import math
from fractions import Fraction

from ..errors import ContextMismatch, PoleError
from .polynomial import Polynomial, as_coef
from .radical import RadicalElement
from .rational import RationalFunction

FN_TYPES = (Polynomial, RationalFunction, RadicalElement)


def nvars_of(f):
    return f.nvars


def lift(x, nvars):
    """Turn a scalar into a constant polynomial; pass function elements through."""
    if isinstance(x, FN_TYPES):
        if x.nvars != nvars:
            raise ContextMismatch(f"element in {x.nvars} variables, expected {nvars}")
        return x
    return Polynomial.constant(nvars, as_coef(x))


def _check(f, g):
    if f.nvars != g.nvars:
        raise ContextMismatch(f"operands in {f.nvars} and {g.nvars} variables")
    if isinstance(f, RadicalElement) and isinstance(g, RadicalElement) and f.base != g.base:
        raise ContextMismatch("operands carry different radical bases")


def ring_op(f, g, op):
    """Apply ``op`` in {'add', 'sub', 'mul', 'div', 'neg', 'intpow'}.

    For ``neg`` the second operand is ignored; for ``intpow`` it is the
    integer exponent.
    """
    if op == "neg":
        return -f
    if op == "intpow":
        if not isinstance(g, int):
            raise TypeError("intpow needs an integer exponent")
        return f**g
    f, g = _pair(f, g)
    _check(f, g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        if is_zero(g):
            raise PoleError("division by the zero element")
        return f / g
    raise ValueError(f"unknown ring operation {op!r}")


def partial_derivative(f, i):
    return f.diff(i)


def is_zero(f, reducer=None):
    """Zero test; ``reducer`` maps a polynomial to a canonical residue."""
    if not isinstance(f, FN_TYPES):
        return as_coef(f) == 0
    if isinstance(f, RadicalElement):
        return is_zero(f.a, reducer) and is_zero(f.b, reducer)
    if isinstance(f, RationalFunction):
        f = f.num
    if reducer is not None:
        f = reducer(f)
    return f.is_zero()


def _pair(f, g):
    if not isinstance(f, FN_TYPES) and isinstance(g, FN_TYPES):
        f = lift(f, g.nvars)
    if not isinstance(g, FN_TYPES) and isinstance(f, FN_TYPES):
        g = lift(g, f.nvars)
    return f, g


def equals(f, g, reducer=None):
    f, g = _pair(f, g)
    if not isinstance(f, FN_TYPES):
        return as_coef(f) == as_coef(g)
    _check(f, g)
    return is_zero(f - g, reducer)


def evaluate(f, point, radical_value=None):
    if len(point) != f.nvars:
        raise ContextMismatch(f"point of length {len(point)} for {f.nvars} variables")
    if isinstance(f, RadicalElement):
        return f.evaluate(point, radical_value)
    return f.evaluate(point)


def evaluate_float(f, point, radical_value=None):
    if isinstance(f, RadicalElement):
        return f.evaluate_float(point, radical_value)
    return f.evaluate_float(point)


def min_denominator(f, point):
    """Smallest |denominator factor| of ``f`` at a float point (inf if none)."""
    if isinstance(f, Polynomial):
        return math.inf
    return f.min_abs_den_float(point)


def laplacian(f, upto=None):
    """Sum of the pure second partials over variables 1..upto (default all)."""
    upto = f.nvars if upto is None else upto
    out = 0
    for i in range(1, upto + 1):
        out = f.diff(i).diff(i) + out
    return out


def euler(f, upto=None):
    """``sum x_i d_i f`` over variables 1..upto (default all)."""
    upto = f.nvars if upto is None else upto
    out = 0
    for i in range(1, upto + 1):
        out = Polynomial.variable(f.nvars, i) * f.diff(i) + out
    return out


def size(f):
    """Number of stored monomials, used for blowup caps."""
    if isinstance(f, Polynomial):
        return len(f)
    if isinstance(f, RationalFunction):
        return len(f.num) + sum(len(b) for b in f.den_factors)
    return size(f.a) + size(f.b)


def to_fraction(x):
    return Fraction(as_coef(x))
