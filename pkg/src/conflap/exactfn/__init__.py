"""Exact arithmetic: polynomials, rational functions and one square root."""

from .ops import (
    FN_TYPES,
    equals,
    euler,
    evaluate,
    evaluate_float,
    is_zero,
    laplacian,
    lift,
    min_denominator,
    partial_derivative,
    ring_op,
    size,
)
from .parse import parse_polynomial
from .polynomial import Polynomial, monomials
from .radical import RadicalElement
from .rational import RationalFunction

__all__ = [
    "FN_TYPES",
    "Polynomial",
    "RadicalElement",
    "RationalFunction",
    "equals",
    "euler",
    "evaluate",
    "evaluate_float",
    "is_zero",
    "laplacian",
    "lift",
    "min_denominator",
    "monomials",
    "parse_polynomial",
    "partial_derivative",
    "ring_op",
    "size",
]
