"""Sparse multivariate polynomials over Q.

Exponent vectors are packed into a single int, 16 bits per variable with
variable 1 in the lowest field.  Integer comparison of packed keys is then
the lexicographic order with the highest-numbered variable most significant,
which is the order used for leading terms and for exact division.
Coefficients are ``int`` or ``Fraction``; a ``Fraction`` with denominator 1
is always stored as ``int``.
"""

import heapq
import itertools
import math
from fractions import Fraction
from numbers import Rational

from ..errors import ContextMismatch, PoleError

_BITS = 16
_MASK = (1 << _BITS) - 1
MAX_EXPONENT = (1 << (_BITS - 1)) - 1

_guards = {}


def _guard(nvars):
    g = _guards.get(nvars)
    if g is None:
        g = sum(1 << (_BITS * i + _BITS - 1) for i in range(nvars))
        _guards[nvars] = g
    return g


def pack(exps):
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


def unpack(key, nvars):
    return tuple((key >> (_BITS * i)) & _MASK for i in range(nvars))


def as_coef(c):
    """Coerce ``c`` to an exact coefficient (``int`` or reduced ``Fraction``)."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return as_coef(Fraction(c.numerator, c.denominator))
    raise TypeError(f"expected an exact rational, got {type(c).__name__}")


def _clean(t):
    out = {}
    for k, c in t.items():
        if c:
            if type(c) is Fraction and c.denominator == 1:
                c = c.numerator
            out[k] = c
    return out


def format_coef(c):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


class Polynomial:
    """Polynomial in ``nvars`` variables with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients::

        >>> p = Polynomial(2, {(2, 1): 1, (1, 0): Fraction(3, 2)})
        >>> str(p)
        'y1^2*y2 + 3/2*y1'
    """

    __slots__ = ("nvars", "_t", "_hash")

    def __init__(self, nvars, terms=None):
        if not isinstance(nvars, int) or nvars < 1:
            raise ValueError(f"nvars must be a positive integer, got {nvars!r}")
        t = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ContextMismatch(
                    f"exponent vector {exps} has length {len(exps)}, expected {nvars}"
                )
            key = pack(exps)
            t[key] = t.get(key, 0) + as_coef(c)
        self.nvars = nvars
        self._t = _clean(t)
        self._hash = None

    @classmethod
    def _raw(cls, nvars, t):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, nvars, c):
        c = as_coef(c)
        return cls._raw(nvars, {0: c} if c else {})

    @classmethod
    def variable(cls, nvars, i):
        if not 1 <= i <= nvars:
            raise IndexError(f"variable index {i} out of range 1..{nvars}")
        return cls._raw(nvars, {1 << (_BITS * (i - 1)): 1})

    @classmethod
    def monomial(cls, exps, coef=1):
        exps = tuple(exps)
        return cls._raw(len(exps), {pack(exps): as_coef(coef)} if coef else {})

    @classmethod
    def sum_of_squares(cls, nvars, upto=None):
        upto = nvars if upto is None else upto
        return cls._raw(nvars, {2 << (_BITS * i): 1 for i in range(upto)})

    # -- inspection ------------------------------------------------------

    @property
    def terms(self):
        return {unpack(k, self.nvars): c for k, c in self._t.items()}

    def __len__(self):
        return len(self._t)

    def is_zero(self):
        return not self._t

    def is_constant(self):
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self._t.get(0, 0)

    def degree(self):
        if not self._t:
            return -1
        return max(sum(unpack(k, self.nvars)) for k in self._t)

    def degree_in(self, i):
        shift = _BITS * (i - 1)
        return max(((k >> shift) & _MASK for k in self._t), default=-1)

    def leading_term(self):
        """Leading (exponents, coefficient) in lex order, last variable highest."""
        k = max(self._t)
        return unpack(k, self.nvars), self._t[k]

    def monic(self):
        """Return ``(lc, p / lc)`` so that the second entry has leading coefficient 1."""
        lc = self._t[max(self._t)]
        if lc == 1:
            return 1, self
        inv = Fraction(1) / lc
        return lc, Polynomial._raw(self.nvars, _clean({k: c * inv for k, c in self._t.items()}))

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ContextMismatch(
                    f"polynomials in {self.nvars} and {other.nvars} variables"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._t) > len(self._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        for k, c in b.items():
            v = t.get(k)
            if v is None:
                t[k] = c
            else:
                v = v + c
                if v:
                    if type(v) is Fraction and v.denominator == 1:
                        v = v.numerator
                    t[k] = v
                else:
                    del t[k]
        return Polynomial._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {k: -c for k, c in self._t.items()})

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

    def scale(self, c):
        c = as_coef(c)
        if not c:
            return Polynomial._raw(self.nvars, {})
        if c == 1:
            return self
        return Polynomial._raw(self.nvars, _clean({k: v * c for k, v in self._t.items()}))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (kb, cb), = b.items()
            if kb == 0:
                return Polynomial._raw(self.nvars, a).scale(cb)
        t = {}
        get = t.get
        for k2, c2 in b.items():
            for k1, c1 in a.items():
                k = k1 + k2
                t[k] = get(k, 0) + c1 * c2
        return Polynomial._raw(self.nvars, _clean(t))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (1 / self) ** (-k)
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise PoleError("division by zero")
            return self.scale(Fraction(1) / other)
        if isinstance(other, Polynomial):
            from .rational import RationalFunction

            return RationalFunction(self._coerce(other)).inverse() * self
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            from .rational import RationalFunction

            return RationalFunction(self).inverse() * other
        return NotImplemented

    def exact_div(self, d):
        """Quotient ``self / d`` if ``d`` divides ``self`` exactly, else ``None``."""
        if d.nvars != self.nvars:
            raise ContextMismatch("exact_div across variable counts")
        if not d._t:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self._t:
            return self
        kd = max(d._t)
        cd = d._t[kd]
        g = _guard(self.nvars)
        r = dict(self._t)
        heap = [-k for k in r]
        heapq.heapify(heap)
        q = {}
        dt = d._t
        while r:
            kr = -heapq.heappop(heap)
            cr = r.get(kr)
            if cr is None:
                continue
            if ((kr | g) - kd) & g != g:
                return None
            kq = kr - kd
            cq = Fraction(cr, cd) if isinstance(cr, int) and isinstance(cd, int) else cr / cd
            if type(cq) is Fraction and cq.denominator == 1:
                cq = cq.numerator
            q[kq] = cq
            for k, c in dt.items():
                kk = k + kq
                v = r.get(kk)
                if v is None:
                    r[kk] = -cq * c
                    heapq.heappush(heap, -kk)
                else:
                    v = v - cq * c
                    if v:
                        r[kk] = v
                    else:
                        del r[kk]
        return Polynomial._raw(self.nvars, _clean(q))

    def rewrite_square(self, i, replacement):
        """Reduce modulo ``x_i**2 - replacement``.

        Every power ``x_i**e`` becomes ``x_i**(e % 2) * replacement**(e // 2)``.
        ``replacement`` must not involve ``x_i``; the result then has degree
        at most 1 in ``x_i`` and is the normal form for that relation.
        """
        if replacement.degree_in(i) > 0:
            raise ValueError("replacement must not involve the rewritten variable")
        shift = _BITS * (i - 1)
        groups = {}
        for k, c in self._t.items():
            e = (k >> shift) & _MASK
            q = e >> 1
            groups.setdefault(q, {})[k - ((2 * q) << shift)] = c
        if not groups or list(groups) == [0]:
            return self
        out = Polynomial._raw(self.nvars, groups.pop(0, {}))
        power = Polynomial.constant(self.nvars, 1)
        for q in range(1, max(groups) + 1):
            power = power * replacement
            if q in groups:
                out = out + Polynomial._raw(self.nvars, groups[q]) * power
        return out

    # -- calculus and evaluation -----------------------------------------

    def diff(self, i):
        if not 1 <= i <= self.nvars:
            raise IndexError(f"variable index {i} out of range 1..{self.nvars}")
        shift = _BITS * (i - 1)
        one = 1 << shift
        t = {}
        for k, c in self._t.items():
            e = (k >> shift) & _MASK
            if e:
                t[k - one] = c * e
        return Polynomial._raw(self.nvars, t)

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ContextMismatch(f"point of length {len(point)} for {self.nvars} variables")
        point = [as_coef(p) for p in point]
        return as_coef(sum((c * _mono_value(k, point) for k, c in self._t.items()), Fraction(0)))

    def evaluate_float(self, point):
        point = [float(p) for p in point]
        return math.fsum(float(c) * _mono_value(k, point) for k, c in self._t.items())

    def substitute(self, values):
        """Compose with ``values``: variable i is replaced by ``values[i-1]``.

        The values may be any exact function elements sharing one context;
        the result is built with their arithmetic.
        """
        if len(values) != self.nvars:
            raise ContextMismatch(f"{len(values)} values for {self.nvars} variables")
        powers = [{0: 1, 1: v} for v in values]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                h = e // 2
                cache[e] = power(i, h) * power(i, e - h)
            return cache[e]

        total = 0
        for k, c in sorted(self._t.items()):
            term = c
            for i in range(self.nvars):
                e = (k >> (_BITS * i)) & _MASK
                if e:
                    term = power(i, e) * term
            total = total + term
        return total

    # -- comparison and display ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({0: as_coef(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._t.items())))
        return self._hash

    def format(self, var="y"):
        if not self._t:
            return "0"
        parts = []
        for k in sorted(self._t, reverse=True):
            c = self._t[k]
            exps = unpack(k, self.nvars)
            factors = [
                f"{var}{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(exps)
                if e
            ]
            neg = c < 0
            mag = -c if neg else c
            if not factors:
                body = format_coef(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = format_coef(mag) + "*" + "*".join(factors)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.nvars}, {self.format()!r})"


def _mono_value(k, point):
    v = 1
    for i, p in enumerate(point):
        e = (k >> (_BITS * i)) & _MASK
        if e:
            v = v * p**e
    return v


def monomials(nvars, max_degree):
    """All monic monomials of total degree <= ``max_degree``, ordered by degree."""
    out = []
    for d in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            out.append(Polynomial.monomial(exps))
    return out
