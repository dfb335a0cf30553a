"""Function calculus on S^n and the sphere-side intertwining identities.

Functions on the sphere are rational (or radical) functions of the ambient
coordinates x_1..x_(n+1), compared modulo the ideal generated by
|x|^2 - 1.  Residues are normalized by rewriting x_(n+1)^2 as
1 - x_1^2 - ... - x_n^2.

Half-integer weights use the single radical s = sqrt(1 + x_(n+1)).  An
element A + B s is zero iff A and B are both zero on the sphere.  In the
stereographic coordinates 1 + x_(n+1) = 2 / (1 + |y|^2), and 1 + |y|^2 is
irreducible over R, so 1 + x_(n+1) has odd order along it and is not a
square in the function field of S^n; hence A = -B s is impossible unless
both vanish.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContextMismatch, PoleError
from .exactfn import (
    FN_TYPES,
    Polynomial,
    RadicalElement,
    RationalFunction,
    euler,
    is_zero,
    laplacian,
    lift,
    monomials,
)
from .report import Report


def _ambient(n):
    return n + 1


def sphere_relation(n):
    """``1 - x_1^2 - ... - x_n^2``, the value substituted for x_(n+1)^2."""
    N = _ambient(n)
    return 1 - Polynomial.sum_of_squares(N, upto=n)


def reducer(n):
    """Normal-form map for polynomials modulo |x|^2 - 1 in n+1 variables."""
    N = _ambient(n)
    repl = sphere_relation(n)

    def reduce(p):
        return p.rewrite_square(N, repl)

    return reduce


def _reduce_plain(F, n):
    red = reducer(n)
    if isinstance(F, Polynomial):
        return red(F)
    out = RationalFunction._raw(red(F.num), {})
    for base, e in F.den_factors.items():
        b = red(base)
        if b.is_zero():
            raise PoleError(f"denominator factor {base.format('x')} vanishes on the sphere")
        for _ in range(e):
            out = out / b
    if isinstance(out, RationalFunction) and out.num != red(out.num):
        out = RationalFunction._raw(red(out.num), out.den_factors)
    if isinstance(out, RationalFunction) and not out.den_factors:
        return out.num
    return out


def reduce_fn(F, n):
    if not isinstance(F, FN_TYPES):
        F = lift(F, _ambient(n))
    if F.nvars != _ambient(n):
        raise ContextMismatch(f"sphere function for n={n} needs {n + 1} variables, got {F.nvars}")
    if isinstance(F, RadicalElement):
        a = _reduce_plain(F.a, n)
        b = _reduce_plain(F.b, n)
        if is_zero(b):
            return a
        return RadicalElement(a, b, F.base)
    return _reduce_plain(F, n)


@dataclass(frozen=True, eq=False)
class SphereFunction:
    """A residue class on S^n represented by an ambient function element."""

    n: int
    value: object

    @property
    def nvars(self):
        return _ambient(self.n)

    def _other(self, other):
        if isinstance(other, SphereFunction):
            if other.n != self.n:
                raise ContextMismatch(f"functions on S^{self.n} and S^{other.n}")
            return other.value
        return lift(other, self.nvars) if not isinstance(other, FN_TYPES) else other

    def __add__(self, other):
        return reduce_mod_sphere(self.value + self._other(other), self.n)

    __radd__ = __add__

    def __sub__(self, other):
        return reduce_mod_sphere(self.value - self._other(other), self.n)

    def __rsub__(self, other):
        return reduce_mod_sphere(self._other(other) - self.value, self.n)

    def __neg__(self):
        return SphereFunction(self.n, -self.value)

    def __mul__(self, other):
        return reduce_mod_sphere(self.value * self._other(other), self.n)

    __rmul__ = __mul__

    def is_zero(self):
        return is_zero(self.value, reducer(self.n))

    def __eq__(self, other):
        if isinstance(other, SphereFunction) or isinstance(other, FN_TYPES + (int, Fraction)):
            return is_zero(self.value - self._other(other), reducer(self.n))
        return NotImplemented

    __hash__ = None

    def format(self):
        return self.value.format("x")

    def __str__(self):
        return self.format()


def reduce_mod_sphere(F, n):
    return SphereFunction(n, reduce_fn(F, n))


def sphere_laplacian(u, n=None):
    """Laplacian of S^n via the ambient formula Delta - E^2 - (n-1) E.

    Any extension of ``u`` off the sphere gives the same residue.
    """
    if not isinstance(u, SphereFunction):
        u = reduce_mod_sphere(u, n)
    n = u.n
    F = u.value
    EF = euler(F)
    out = laplacian(F) - euler(EF) - EF * (n - 1)
    return reduce_mod_sphere(out, n)


def c_constants(n, k):
    """``c_j = (n/2 + j - 1)(n/2 - j)`` for j = 1..k."""
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    return [Fraction((n + 2 * j - 2) * (n - 2 * j), 4) for j in range(1, k + 1)]


def c_differences(n, k):
    c = c_constants(n, k)
    return [c[0] - cj for cj in c]


@dataclass(frozen=True)
class SphereOpSpec:
    n: int
    k: int
    constants: tuple

    @classmethod
    def build(cls, n, k):
        return cls(n, k, tuple(c_constants(n, k)))

    def __post_init__(self):
        if len(self.constants) != self.k:
            raise ValueError("need exactly k constants")
        if tuple(self.constants) != tuple(c_constants(self.n, self.k)):
            raise ValueError("constants do not match (n/2 + j - 1)(n/2 - j)")


def sphere_power_apply(spec, u):
    """Apply (Delta_S - c_k) ... (Delta_S - c_1) to ``u``."""
    if not isinstance(u, SphereFunction):
        u = reduce_mod_sphere(u, spec.n)
    for c in spec.constants:
        u = sphere_laplacian(u) - u.value * c
    return u


def stereo_coordinates(n):
    """The substitution y_i = x_i / (1 + x_(n+1)) as rational functions of x."""
    N = _ambient(n)
    base = Polynomial.variable(N, N) + 1
    return [RationalFunction._raw(Polynomial.variable(N, i + 1), {base: 1}) for i in range(n)]


def _pull_poly(p, n):
    N = _ambient(n)
    if p.nvars != n:
        raise ContextMismatch(f"expected a function of {n} variables, got {p.nvars}")
    d = max(p.degree(), 0)
    one_plus = Polynomial.variable(N, N) + 1
    num = Polynomial.constant(N, 0)
    powers = {0: Polynomial.constant(N, 1)}
    for exps, c in p.terms.items():
        m = d - sum(exps)
        if m not in powers:
            powers[m] = one_plus**m
        num = num + Polynomial.monomial(tuple(exps) + (0,), c) * powers[m]
    num = reducer(n)(num)
    if d == 0:
        return num
    return RationalFunction._raw(num, {one_plus: d})


def stereographic_pullback(f, n):
    """``Phi* f``: substitute y_i = x_i / (1 + x_(n+1)) and reduce."""
    if isinstance(f, RadicalElement):
        raise ContextMismatch("stereographic pullback takes radical-free functions")
    if not isinstance(f, FN_TYPES):
        f = lift(f, n)
    if isinstance(f, Polynomial):
        return reduce_mod_sphere(_pull_poly(f, n), n)
    out = _pull_poly(f.num, n)
    for base, e in f.den_factors.items():
        b = reduce_fn(_pull_poly(base, n), n)
        for _ in range(e):
            out = out / b
    return reduce_mod_sphere(out, n)


def half_root(n):
    """``s = sqrt(1 + x_(n+1))``."""
    N = _ambient(n)
    return RadicalElement.sqrt(Polynomial.variable(N, N) + 1)


def weight_factor(w, n, radical=False):
    """``(1 + x_(n+1))^w``; half-integer ``w`` is written as ``s^(2w)``."""
    w = Fraction(w)
    N = _ambient(n)
    one_plus = Polynomial.variable(N, N) + 1
    if w.denominator == 1:
        return one_plus ** int(w)
    if w.denominator != 2:
        raise ValueError(f"weights must be integers or half-integers, got {w}")
    if not radical:
        raise ContextMismatch(f"weight {w} needs the radical sqrt(1 + x_{N}); enable radical mode")
    return half_root(n) ** int(2 * w)


def weight_mult(w, u, n=None, radical=False):
    if not isinstance(u, SphereFunction):
        u = reduce_mod_sphere(u, n)
    return reduce_mod_sphere(weight_factor(w, u.n, radical) * u.value, u.n)


# -- verifiers -----------------------------------------------------------


def _sphere_identity(a, b):
    if a == b:
        return True, None
    return False, f"lhs - rhs = {(a - b).format()}"


def inverse_stereo(n):
    """sigma(y) = (2y / (1 + |y|^2), (1 - |y|^2) / (1 + |y|^2)) as rational functions of y."""
    r2 = Polynomial.sum_of_squares(n)
    rho = r2 + 1
    comps = [Polynomial.variable(n, i + 1) * 2 / rho for i in range(n)]
    comps.append((1 - r2) / rho)
    return comps


def verify_conformality(n):
    if n < 1:
        raise ValueError("need n >= 1")
    report = Report("verify conformality", {"n": n})
    sigma = inverse_stereo(n)
    rho = Polynomial.sum_of_squares(n) + 1
    factor = 2 / rho

    def gram():
        J = [[c.diff(j + 1) for j in range(n)] for c in sigma]
        target = factor * factor
        for a in range(n):
            for b in range(a, n):
                entry = 0
                for row in J:
                    entry = row[a] * row[b] + entry
                want = target if a == b else 0
                diff = entry - want
                if not is_zero(diff):
                    return False, f"G[{a + 1},{b + 1}] - expected = {diff}"
        return True, None

    report.check(
        f"conformality/n={n}/gram",
        "D sigma^T D sigma = (2/(1+|y|^2))^2 I",
        gram,
    )

    def on_sphere():
        total = 0
        for c in sigma:
            total = c * c + total
        return is_zero(total - 1), f"|sigma|^2 - 1 = {total - 1}"

    report.check(f"conformality/n={n}/image", "|sigma(y)|^2 = 1", on_sphere)

    def weight():
        diff = (sigma[-1] + 1) - factor
        return is_zero(diff), f"sigma*(1 + x_(n+1)) - 2/(1+|y|^2) = {diff}"

    report.check(f"conformality/n={n}/weight", "sigma*(1 + x_(n+1)) = 2/(1+|y|^2)", weight)

    def round_trip():
        for i in range(n):
            back = sigma[i] / (sigma[-1] + 1) - Polynomial.variable(n, i + 1)
            if not is_zero(back):
                return False, f"Phi(sigma(y))_{i + 1} - y_{i + 1} = {back}"
        return True, None

    report.check(f"conformality/n={n}/inverse", "Phi(sigma(y)) = y", round_trip)

    def pulled():
        lhs = stereographic_pullback(factor, n)
        rhs = reduce_mod_sphere(Polynomial.variable(n + 1, n + 1) + 1, n)
        return _sphere_identity(lhs, rhs)

    report.check(f"conformality/n={n}/pullback", "Phi*(2/(1+|y|^2)) = 1 + x_(n+1)", pulled)
    return report


def verify_intertwining_weight(w, f, n):
    """Check Phi*(M_w f) = (1 + x_(n+1))^w Phi* f."""
    from .diffop import weight_function

    report = Report("verify weight", {"n": n, "w": w, "f": str(f)})

    def check():
        lhs = stereographic_pullback(weight_function(w, n) * lift(f, n), n)
        rhs = weight_mult(w, stereographic_pullback(f, n))
        return _sphere_identity(lhs, rhs)

    report.check(f"weight/n={n}/w={w}/f={f}", "M^w Phi* f = Phi* M_w f", check)
    return report


def _radical_mode(n, radical):
    if radical == "auto":
        return n % 2 == 1
    if radical in ("on", True):
        return True
    if radical in ("off", False):
        if n % 2 == 1:
            raise ValueError(f"odd n={n} needs radical mode (weights are half-integers)")
        return False
    raise ValueError(f"radical must be on, off or auto, got {radical!r}")


def main_sides(n, k, f, radical):
    """Both sides of the sphere identity for one test function ``f`` on R^n."""
    from .flat import iterate_laplacian

    spec = SphereOpSpec.build(n, k)
    half_n = Fraction(n, 2)
    pulled = stereographic_pullback(f, n)
    lhs = sphere_power_apply(spec, weight_mult(k - half_n, pulled, radical=radical))
    rhs = weight_mult(-k - half_n, stereographic_pullback(iterate_laplacian(lift(f, n), k), n), radical=radical)
    return lhs, rhs


def verify_main(n, k, max_degree=None, radical="auto", functions=None, command="verify main"):
    if k < 1:
        raise ValueError("k must be >= 1 (k is a natural number)")
    if n < 1:
        raise ValueError("need n >= 1")
    use_radical = _radical_mode(n, radical)
    max_degree = 2 * k + 1 if max_degree is None else max_degree
    report = Report(
        command,
        {"n": n, "k": k, "max_degree": max_degree, "radical": "on" if use_radical else "off"},
    )
    prefix = f"{command.split()[-1]}/n={n}/k={k}"
    if functions is None:
        functions = monomials(n, max_degree)
    for f in functions:
        report.check(
            f"{prefix}/f={f}",
            f"prod(Delta_S - c_j) M^(k-n/2) Phi* f = M^(-k-n/2) Phi* Delta^k f for f = {f}",
            lambda f=f: _sphere_identity(*main_sides(n, k, f, use_radical)),
        )
    return report


def verify_yamabe(n, max_degree=3, radical="auto", functions=None):
    """The k = 1 case: (Delta_S - c_1) M^(1-n/2) Phi* = M^(-1-n/2) Phi* Delta."""
    report = verify_main(n, 1, max_degree, radical, functions, command="verify yamabe")
    N = n + 1
    if n == 2:
        u = stereographic_pullback(Polynomial.variable(2, 1), 2)
        report.check(
            "yamabe/n=2/witness",
            "Delta_S (x1/(1+x3)) = 0",
            lambda: _sphere_identity(sphere_laplacian(u), reduce_mod_sphere(0, 2)),
        )
    if n == 4:
        u = reduce_mod_sphere(1 / (Polynomial.variable(N, N) + 1), 4)
        report.check(
            "yamabe/n=4/witness",
            "(Delta_S - 2)(1+x5)^(-1) = 0",
            lambda: _sphere_identity(sphere_laplacian(u) - u.value * 2, reduce_mod_sphere(0, 4)),
        )
    return report


# -- spectrum ------------------------------------------------------------


def harmonic_projection(p):
    """Harmonic part of a homogeneous polynomial ``p`` of degree l in N variables.

    h = sum_j a_j |x|^(2j) Delta^j p with a_0 = 1 and
    a_j = -a_(j-1) / (2j (N + 2l - 2j - 2)).
    """
    N = p.nvars
    l = p.degree()
    if l < 2:
        return p
    r2 = Polynomial.sum_of_squares(N)
    out = p
    a = Fraction(1)
    term = p
    r_pow = Polynomial.constant(N, 1)
    for j in range(1, l // 2 + 1):
        a = -a / (2 * j * (N + 2 * l - 2 * j - 2))
        term = laplacian(term)
        r_pow = r_pow * r2
        out = out + (r_pow * term).scale(a)
    return out


def harmonic_basis(n, l):
    """Harmonic polynomials of degree l built from monomials in x_1, x_2, x_(n+1)."""
    N = _ambient(n)
    slots = sorted({0, min(1, n - 1), N - 1})
    seen = []
    for combo in monomials(len(slots), l):
        exps = combo.leading_term()[0]
        if sum(exps) != l:
            continue
        full = [0] * N
        for s, e in zip(slots, exps):
            full[s] += e
        h = harmonic_projection(Polynomial.monomial(full))
        if h.is_zero() or any(h == g for g in seen):
            continue
        seen.append(h)
    return seen


def eigenvalue(n, k, l):
    """``prod_j (-l(l+n-1) - c_j)``."""
    out = Fraction(1)
    for c in c_constants(n, k):
        out *= -l * (l + n - 1) - c
    return out


def spectrum(n, k, l_max):
    if l_max < 0:
        raise ValueError("l_max must be >= 0")
    report = Report("spectrum", {"n": n, "k": k, "l_max": l_max})
    consts = c_constants(n, k)

    def table():
        for j, (c, d) in enumerate(zip(consts, c_differences(n, k)), start=1):
            if d != j * (j - 1):
                return False, f"c_1 - c_{j} = {d}, expected {j * (j - 1)}"
            if c != (Fraction(n, 2) + j - 1) * (Fraction(n, 2) - j):
                return False, f"c_{j} = {c}"
        return True, None

    report.check(f"spectrum/n={n}/k={k}/constants", "c_1 - c_j = j(j-1)", table)
    spec = SphereOpSpec.build(n, k)
    mus = []
    for l in range(l_max + 1):
        mu = eigenvalue(n, k, l)
        mus.append([l, str(mu)])
        for idx, h in enumerate(harmonic_basis(n, l)):
            cid = f"spectrum/n={n}/k={k}/l={l}/h={idx}"

            def check(h=h, l=l, mu=mu):
                if not laplacian(h).is_zero():
                    return False, f"ambient Laplacian of {h.format('x')} is not zero"
                u = reduce_mod_sphere(h, n)
                if sphere_laplacian(u) != u.value * (-l * (l + n - 1)):
                    return False, f"Delta_S {h.format('x')} != -l(l+n-1) h"
                got = sphere_power_apply(spec, u)
                return _sphere_identity(got, u * mu)

            report.check(cid, f"operator acts on {h.format('x')} by mu_{l} = {mu}", check)
    report.data["constants"] = [str(c) for c in consts]
    report.data["mu"] = mus
    return report
