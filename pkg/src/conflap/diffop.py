"""Linear differential operators ``sum_alpha a_alpha(y) d^alpha``.

Operators are stored in normal form, every coefficient to the left of its
derivative, so that equality is a coefficientwise test and composition is the
only place where the Leibniz rule enters.
"""

import itertools
import math
import os
from fractions import Fraction

from .errors import ContextMismatch, LimitExceeded
from .exactfn import FN_TYPES, Polynomial, RadicalElement, is_zero as fn_is_zero, lift, size

DEFAULT_TERM_CAP = 200_000


def term_cap():
    """Monomial cap per operator; ``CONFLAP_TERM_CAP`` overrides the default."""
    env = os.environ.get("CONFLAP_TERM_CAP")
    if env:
        return int(env)
    return DEFAULT_TERM_CAP


def _zero_coef(c):
    if isinstance(c, RadicalElement):
        return c.is_zero()
    return c.is_zero()


def _sub_indices(alpha):
    return itertools.product(*(range(a + 1) for a in alpha))


def _binom(alpha, gamma):
    out = 1
    for a, g in zip(alpha, gamma):
        out *= math.comb(a, g)
    return out


class _Derivs:
    """Memoized mixed partials of one coefficient."""

    def __init__(self, f):
        self.cache = {(0,) * f.nvars: f}

    def __call__(self, gamma):
        got = self.cache.get(gamma)
        if got is None:
            i = next(j for j, g in enumerate(gamma) if g)
            lower = gamma[:i] + (gamma[i] - 1,) + gamma[i + 1 :]
            got = self(lower).diff(i + 1)
            self.cache[gamma] = got
        return got


class DiffOp:
    """``terms`` maps multi-index tuples to nonzero function coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        if not isinstance(nvars, int) or nvars < 1:
            raise ValueError(f"dimension must be a positive integer, got {nvars!r}")
        self.nvars = nvars
        self.terms = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != nvars or any(a < 0 for a in alpha):
                raise ContextMismatch(f"bad multi-index {alpha} for dimension {nvars}")
            c = lift(c, nvars)
            if not _zero_coef(c):
                self.terms[alpha] = c

    @classmethod
    def _raw(cls, nvars, terms):
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        return obj

    # -- constructors ----------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls(n, {(0,) * n: 1})

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def partial(cls, n, i):
        alpha = [0] * n
        alpha[i - 1] = 1
        return cls(n, {tuple(alpha): 1})

    @classmethod
    def mult(cls, f):
        return cls(f.nvars, {(0,) * f.nvars: f})

    # -- linear structure ------------------------------------------------

    def _check(self, other):
        if not isinstance(other, DiffOp):
            raise TypeError(f"expected a DiffOp, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ContextMismatch(f"operators on R^{self.nvars} and R^{other.nvars}")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for alpha, c in other.terms.items():
            if alpha in terms:
                s = terms[alpha] + c
                if _zero_coef(s):
                    del terms[alpha]
                else:
                    terms[alpha] = s
            else:
                terms[alpha] = c
        return DiffOp._raw(self.nvars, terms)

    def __neg__(self):
        return DiffOp._raw(self.nvars, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, (int, Fraction)):
            if not c:
                return DiffOp.zero(self.nvars)
            return DiffOp._raw(self.nvars, {a: v * c for a, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __matmul__(self, other):
        return compose(self, other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = DiffOp.identity(self.nvars)
        for _ in range(k):
            out = compose(self, out)
        return out

    def __call__(self, f):
        return apply(self, f)

    # -- inspection ------------------------------------------------------

    def order(self):
        return max((sum(a) for a in self.terms), default=-1)

    def size(self):
        return sum(size(c) for c in self.terms.values())

    def is_zero(self, reducer=None):
        return all(fn_is_zero(c, reducer) for c in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def witness(self, reducer=None, var="y"):
        """First coefficient (in multi-index order) that is not zero, formatted."""
        for alpha in sorted(self.terms):
            c = self.terms[alpha]
            if not fn_is_zero(c, reducer):
                return f"({c.format(var)}) * d[{','.join(map(str, alpha))}]"
        return None

    def format(self, var="y"):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({self.terms[a].format(var)}) * d[{','.join(map(str, a))}]"
            for a in sorted(self.terms, reverse=True)
        )

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"DiffOp({self.nvars}, {self.format()!r})"


def compose(P, Q, cap=None):
    """Normal form of ``P o Q`` by the generalized Leibniz rule.

    ``a d^alpha (b d^beta) = sum_{gamma <= alpha} C(alpha, gamma) a (d^gamma b) d^(alpha-gamma+beta)``
    """
    P._check(Q)
    cap = term_cap() if cap is None else cap
    derivs = [(beta, _Derivs(b)) for beta, b in Q.terms.items()]
    buckets = {}
    for alpha, a in P.terms.items():
        for gamma in _sub_indices(alpha):
            c = _binom(alpha, gamma)
            rest = tuple(x - g for x, g in zip(alpha, gamma))
            for beta, db in derivs:
                d = db(gamma)
                if _zero_coef(d):
                    continue
                key = tuple(r + b for r, b in zip(rest, beta))
                buckets.setdefault(key, []).append(a * d * c if c != 1 else a * d)
    terms = {}
    total = 0
    for key in sorted(buckets):
        parts = buckets[key]
        acc = parts[0]
        for p in parts[1:]:
            acc = acc + p
        if not _zero_coef(acc):
            terms[key] = acc
            total += size(acc)
            if total > cap:
                raise LimitExceeded(f"operator exceeded the term cap of {cap} monomials")
    return DiffOp._raw(P.nvars, terms)


def linear_combine(coeffs, ops):
    if len(coeffs) != len(ops):
        raise ValueError("coefficient and operator lists differ in length")
    if not ops:
        raise ValueError("nothing to combine")
    out = DiffOp.zero(ops[0].nvars)
    for c, P in zip(coeffs, ops):
        out = out + P * c
    return out


def commutator(P, Q, cap=None):
    return compose(P, Q, cap) - compose(Q, P, cap)


def apply(P, f):
    """``sum_alpha a_alpha d^alpha f``."""
    if not isinstance(f, FN_TYPES):
        f = lift(f, P.nvars)
    if f.nvars != P.nvars:
        raise ContextMismatch(f"function in {f.nvars} variables, operator on R^{P.nvars}")
    d = _Derivs(f)
    out = Polynomial.constant(P.nvars, 0)
    for alpha, a in P.terms.items():
        out = out + a * d(alpha)
    return out


def is_zero(P, reducer=None):
    return P.is_zero(reducer)


# -- generators ----------------------------------------------------------


def rho(n):
    """``1 + |y|^2``."""
    return Polynomial.sum_of_squares(n) + 1


def laplacian(n):
    return DiffOp(n, {tuple(2 if j == i else 0 for j in range(n)): 1 for i in range(n)})


def euler(n):
    return DiffOp(n, {tuple(1 if j == i else 0 for j in range(n)): Polynomial.variable(n, i + 1) for i in range(n)})


def mult(f):
    return DiffOp.mult(f)


def weight_function(w, n):
    """``2^w (1 + |y|^2)^(-w)`` for integer ``w``."""
    if isinstance(w, Fraction) and w.denominator == 1:
        w = w.numerator
    if isinstance(w, bool) or not isinstance(w, int):
        raise ValueError(f"flat weights must be integers, got {w!r}")
    two = Fraction(2) ** w
    return rho(n) ** (-w) * two


def m_weight(w, n):
    return DiffOp.mult(weight_function(w, n))


def radial_sq(n):
    return DiffOp.mult(Polynomial.sum_of_squares(n))


def make_generator(kind, n, arg=None):
    """Build one of the named generators: laplacian, euler, mult, m_weight, radial_sq."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be >= 1, got {n!r}")
    if kind == "laplacian":
        return laplacian(n)
    if kind == "euler":
        return euler(n)
    if kind == "mult":
        return mult(lift(arg, n))
    if kind == "m_weight":
        return m_weight(arg, n)
    if kind == "radial_sq":
        return radial_sq(n)
    if kind == "identity":
        return DiffOp.identity(n)
    raise ValueError(f"unknown generator {kind!r}")
