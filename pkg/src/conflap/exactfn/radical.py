"""Quadratic extension by one square root ``s`` with ``s**2 == base``."""

import math
from fractions import Fraction

from ..errors import ContextMismatch, PoleError
from .polynomial import Polynomial, as_coef
from .rational import RationalFunction


def _is_plain(x):
    return isinstance(x, (Polynomial, RationalFunction))


def _rad(a, b, base):
    if b.is_zero():
        return a
    return RadicalElement(a, b, base)


class RadicalElement:
    """The element ``a + b*s`` where ``s = sqrt(base)``.

    ``a`` and ``b`` are polynomials or rational functions; ``base`` is a
    nonzero polynomial.  Only one radical exists per context, so operands
    with different bases are rejected rather than nested.

        >>> u = Polynomial(3, {(0, 0, 1): 1, (0, 0, 0): 1})
        >>> s = RadicalElement.sqrt(u)
        >>> s * s == u
        True
    """

    __slots__ = ("a", "b", "base")

    def __init__(self, a, b, base):
        if not isinstance(base, Polynomial) or base.is_zero():
            raise ValueError("radical base must be a nonzero Polynomial")
        nvars = base.nvars
        a = _lift(a, nvars)
        b = _lift(b, nvars)
        if a.nvars != nvars or b.nvars != nvars:
            raise ContextMismatch("radical components and base in different variables")
        self.a = a
        self.b = b
        self.base = base

    @classmethod
    def sqrt(cls, base):
        return cls(Polynomial.constant(base.nvars, 0), Polynomial.constant(base.nvars, 1), base)

    @property
    def nvars(self):
        return self.base.nvars

    def _coerce(self, other):
        if isinstance(other, RadicalElement):
            if other.base != self.base:
                raise ContextMismatch(
                    f"radical bases differ: {self.base} vs {other.base}"
                )
            return other
        if _is_plain(other):
            if other.nvars != self.nvars:
                raise ContextMismatch("operands in different variables")
            return RadicalElement(other, Polynomial.constant(self.nvars, 0), self.base)
        if isinstance(other, (int, Fraction)):
            return RadicalElement(
                Polynomial.constant(self.nvars, other), Polynomial.constant(self.nvars, 0), self.base
            )
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _rad(self.a + other.a, self.b + other.b, self.base)

    __radd__ = __add__

    def __neg__(self):
        return RadicalElement(-self.a, -self.b, self.base)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _rad(self.a - other.a, self.b - other.b, self.base)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return _rad(self.a * other, self.b * other, self.base)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return _rad(a1 * a2 + b1 * b2 * self.base, a1 * b2 + a2 * b1, self.base)

    __rmul__ = __mul__

    def norm(self):
        """``a**2 - b**2 * base``, the product with the conjugate."""
        return self.a * self.a - self.b * self.b * self.base

    def inverse(self):
        n = self.norm()
        if n.is_zero():
            raise PoleError("radical element has zero norm")
        return _rad(self.a / n, -self.b / n, self.base)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise PoleError("division by zero")
            return self * (Fraction(1) / other)
        if _is_plain(other):
            if other.nvars != self.nvars:
                raise ContextMismatch("operands in different variables")
            return _rad(self.a / other, self.b / other, self.base)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = base * result
            k >>= 1
            if k:
                base = base * base
        return result

    def diff(self, i):
        # d(a + b s) = da + (db + b du / (2u)) s
        du = self.base.diff(i)
        db = self.b.diff(i)
        if not du.is_zero():
            db = db + self.b * du / (self.base * 2)
        return _rad(self.a.diff(i), db, self.base)

    def evaluate(self, point, radical_value):
        if radical_value is None:
            raise ValueError("a radical value is required to evaluate a radical element")
        rv = as_coef(radical_value)
        if rv * rv != self.base.evaluate(point):
            raise ValueError(
                f"radical value {rv} does not square to the base value {self.base.evaluate(point)}"
            )
        return as_coef(self.a.evaluate(point) + self.b.evaluate(point) * rv)

    def evaluate_float(self, point, radical_value=None):
        if radical_value is None:
            u = self.base.evaluate_float(point)
            if u < 0:
                raise ValueError(f"radical base is negative ({u}) at {list(point)}")
            radical_value = math.sqrt(u)
        return self.a.evaluate_float(point) + self.b.evaluate_float(point) * radical_value

    def min_abs_den_float(self, point):
        return min(_min_den(self.a, point), _min_den(self.b, point))

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self.a - other.a).is_zero() and (self.b - other.b).is_zero()

    __hash__ = None

    def format(self, var="y"):
        return f"[{self.a.format(var)}] + [{self.b.format(var)}]*sqrt({self.base.format(var)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RadicalElement({self.format()!r})"


def _lift(x, nvars):
    if isinstance(x, RadicalElement):
        raise ContextMismatch("nested radicals are not supported")
    if isinstance(x, (int, Fraction)):
        return Polynomial.constant(nvars, x)
    if not _is_plain(x):
        raise TypeError(f"cannot use {type(x).__name__} as a radical component")
    return x


def _min_den(x, point):
    if isinstance(x, RationalFunction):
        return x.min_abs_den_float(point)
    return math.inf
