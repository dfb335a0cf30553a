"""Rational functions ``num / prod(base**e)``.

Denominators are kept as a product of monic, nonconstant base polynomials
with positive exponents, all constants living in the numerator.  Sums take
the exponent-wise maximum of the two products, and after every operation the
numerator is divided by each base for as long as the division is exact.  No
multivariate gcd is ever computed, so the representation is not canonical;
equality is decided by whether the numerator of the difference vanishes.
"""

import math
from fractions import Fraction

from ..errors import ContextMismatch, PoleError
from .polynomial import Polynomial, as_coef


def _cancel(num, den):
    if num.is_zero():
        return num, {}
    out = {}
    for base, e in den.items():
        while e:
            q = num.exact_div(base)
            if q is None:
                break
            num = q
            e -= 1
        if e:
            out[base] = e
    return num, out


def _absorb(p, known):
    """Split nonzero ``p`` into ``(scalar * cofactor, {base: e})``.

    Known bases are divided out first; whatever is left becomes one new
    monic base.  Returns the polynomial part that stays in the numerator
    (a constant) and the denominator contribution.
    """
    den = {}
    for base in known:
        while not p.is_constant():
            q = p.exact_div(base)
            if q is None:
                break
            p = q
            den[base] = den.get(base, 0) + 1
    if not p.is_constant():
        lc, p = p.monic()
        den[p] = den.get(p, 0) + 1
        return lc, den
    return p.constant_value(), den


def _make(num, den):
    """Result constructor: demotes to ``Polynomial`` when nothing is left below."""
    num, den = _cancel(num, den)
    if not den:
        return num
    return RationalFunction._raw(num, den)


def _expand(den, nvars):
    out = Polynomial.constant(nvars, 1)
    for base, e in den.items():
        out = out * base**e
    return out


class RationalFunction:
    """Quotient of two polynomials in the same variables."""

    __slots__ = ("num", "_den")

    def __init__(self, num, den=1):
        if not isinstance(num, Polynomial):
            raise TypeError("numerator must be a Polynomial")
        nvars = num.nvars
        if not isinstance(den, Polynomial):
            den = Polynomial.constant(nvars, den)
        if den.nvars != nvars:
            raise ContextMismatch("numerator and denominator in different variables")
        if den.is_zero():
            raise PoleError("zero denominator")
        c, d = _absorb(den, ())
        num, d = _cancel(num.scale(Fraction(1) / c), d)
        self.num = num
        self._den = d

    @classmethod
    def _raw(cls, num, den):
        obj = object.__new__(cls)
        obj.num = num
        obj._den = den
        return obj

    @property
    def nvars(self):
        return self.num.nvars

    @property
    def den(self):
        return _expand(self._den, self.nvars)

    @property
    def den_factors(self):
        return dict(self._den)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise ContextMismatch(
                    f"rational functions in {self.nvars} and {other.nvars} variables"
                )
            return other
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ContextMismatch(
                    f"rational functions in {self.nvars} and {other.nvars} variables"
                )
            return RationalFunction._raw(other, {})
        if isinstance(other, (int, Fraction)):
            return RationalFunction._raw(Polynomial.constant(self.nvars, other), {})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._den, other._den
        if a == b:
            return _make(self.num + other.num, dict(a))
        lcm = dict(a)
        for base, e in b.items():
            if lcm.get(base, 0) < e:
                lcm[base] = e
        na = self.num * _expand({k: e - a.get(k, 0) for k, e in lcm.items() if e > a.get(k, 0)}, self.nvars)
        nb = other.num * _expand({k: e - b.get(k, 0) for k, e in lcm.items() if e > b.get(k, 0)}, self.nvars)
        return _make(na + nb, lcm)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Polynomial.constant(self.nvars, 0)
            return RationalFunction._raw(self.num.scale(other), self._den)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        den = dict(self._den)
        for base, e in other._den.items():
            den[base] = den.get(base, 0) + e
        return _make(self.num * other.num, den)

    __rmul__ = __mul__

    def inverse(self, known=()):
        if self.num.is_zero():
            raise PoleError("inverse of the zero rational function")
        c, den = _absorb(self.num, list(self._den) + list(known))
        num = _expand(self._den, self.nvars).scale(Fraction(1) / c)
        return _make(num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse(known=self._den)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse(known=other._den)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        den = {base: e * k for base, e in self._den.items()} if k else {}
        return _make(self.num**k, den)

    # -- calculus and evaluation -----------------------------------------

    def diff(self, i):
        # d(p / prod b^e) = (p' B - p sum e_b b' B/b) / prod b^(e+1) over bases b
        # that actually depend on variable i; B is the product of those bases.
        nvars = self.nvars
        moving = {b: b.diff(i) for b in self._den}
        moving = {b: db for b, db in moving.items() if not db.is_zero()}
        num = self.num.diff(i) * _expand({b: 1 for b in moving}, nvars)
        for b, db in moving.items():
            rest = _expand({c: 1 for c in moving if c is not b}, nvars)
            num = num - (self.num * db * rest).scale(self._den[b])
        den = {b: e + (1 if b in moving else 0) for b, e in self._den.items()}
        return _make(num, den)

    def evaluate(self, point):
        d = Fraction(1)
        for base, e in self._den.items():
            v = base.evaluate(point)
            if v == 0:
                raise PoleError(f"pole at {list(point)}")
            d *= Fraction(v) ** e
        return as_coef(self.num.evaluate(point) / d)

    def evaluate_float(self, point):
        d = 1.0
        for base, e in self._den.items():
            v = base.evaluate_float(point)
            if v == 0.0:
                raise PoleError(f"pole at {list(point)}")
            d *= v**e
        return self.num.evaluate_float(point) / d

    def min_abs_den_float(self, point):
        return min((abs(b.evaluate_float(point)) for b in self._den), default=math.inf)

    def substitute(self, values):
        out = self.num.substitute(values)
        for base, e in self._den.items():
            out = out / base.substitute(values) ** e
        return out

    # -- comparison and display ------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def format(self, var="y"):
        num = self.num.format(var)
        if len(self.num) > 1 or "/" in num:
            num = f"({num})"
        dens = []
        for base, e in sorted(self._den.items(), key=lambda be: be[0].format(var)):
            b = base.format(var)
            if len(base) > 1:
                b = f"({b})"
            dens.append(b + (f"^{e}" if e > 1 else ""))
        return f"{num}/" + ("*".join(dens) if len(dens) == 1 else "(" + "*".join(dens) + ")")

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFunction({self.format()!r})"
