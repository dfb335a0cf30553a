"""Identities on R^n: the factorized power identity, the commutator
identities, and conformal covariance of powers of the Laplacian."""

from dataclasses import dataclass
from fractions import Fraction

from . import diffop
from .diffop import DiffOp, commutator, compose, linear_combine
from .errors import ContextMismatch
from .exactfn import (
    Polynomial,
    RadicalElement,
    RationalFunction,
    equals,
    laplacian as fn_laplacian,
    monomials,
)
from .report import Report


def build_rn_sides(n, k, cap=None):
    """Both sides of the factorized identity for ``Delta^k`` on R^n.

    LHS = [D + k(k-1)M_2] M_-2 ... [D + 2 M_2] M_-2 D, RHS = M_(1-k) D^k M_(1-k).
    """
    if n < 1 or k < 1:
        raise ValueError("need n >= 1 and k >= 1")
    lap = diffop.laplacian(n)
    m2 = diffop.m_weight(2, n)
    m_minus2 = diffop.m_weight(-2, n)
    lhs = lap
    for j in range(2, k + 1):
        factor = linear_combine([1, j * (j - 1)], [lap, m2])
        lhs = compose(compose(factor, m_minus2, cap), lhs, cap)
    outer = diffop.m_weight(1 - k, n)
    power = DiffOp.identity(n)
    for _ in range(k):
        power = compose(lap, power, cap)
    rhs = compose(compose(outer, power, cap), outer, cap)
    return lhs, rhs


def _op_identity(lhs, rhs):
    diff = lhs - rhs
    return diff.is_zero(), diff.witness()


def verify_rn(n, k, cap=None, apply_to=None):
    report = Report("verify rn", {"n": n, "k": k})
    sides = {}

    def check():
        sides["lhs"], sides["rhs"] = build_rn_sides(n, k, cap)
        return _op_identity(sides["lhs"], sides["rhs"])

    desc = "factorized product equals M_(1-k) Delta^k M_(1-k)"
    if k == 1:
        desc += " (k=1: both sides are Delta)"
    report.check(f"rn/n={n}/k={k}", desc, check)
    if apply_to is not None and "lhs" in sides:
        f = apply_to
        report.check(
            f"rn/n={n}/k={k}/apply",
            f"both sides applied to {f}",
            lambda: _fn_identity(sides["lhs"](f), sides["rhs"](f)),
        )
    return report


def _fn_identity(a, b, var="y"):
    if equals(a, b):
        return True, None
    return False, f"lhs - rhs = {(a - b).format(var)}"


def commutator_sides(n, w_range=(-3, 3), k_max=5, cap=None):
    """Yield ``(case_id, description, lhs_thunk, rhs_thunk)`` for each commutator identity."""
    lap = diffop.laplacian(n)
    X = diffop.euler(n)
    Q = diffop.radial_sq(n)
    ident = DiffOp.identity(n)
    m1 = diffop.m_weight(1, n)

    def mw(w):
        return diffop.m_weight(w, n)

    def two_x_plus(const, w_coef):
        # 2X + n - w_coef * M_1 |y|^2
        return linear_combine([2, const, -w_coef], [X, ident, compose(m1, Q)])

    yield ("comm/1", "[Delta, X] = 2 Delta", lambda: commutator(lap, X, cap), lambda: lap * 2)
    lo, hi = w_range
    for w in range(lo, hi + 1):
        yield (
            f"comm/2/w={w}",
            f"[X, M_w] = -w |y|^2 M_(w+1) at w={w}",
            lambda w=w: commutator(X, mw(w), cap),
            lambda w=w: compose(Q, mw(w + 1)) * (-w),
        )
    for w in range(lo, hi + 1):
        yield (
            f"comm/3/w={w}",
            f"[Delta, M_w] = -w M_w (2X + n - (w-1) M_1 |y|^2) M_1 at w={w}",
            lambda w=w: commutator(lap, mw(w), cap),
            lambda w=w: compose(compose(mw(w), two_x_plus(n, w - 1), cap), m1, cap) * (-w),
        )
        yield (
            f"comm/3alt/w={w}",
            f"[Delta, M_w] = -w M_(w+1) (2X + n - (w+1) M_1 |y|^2) at w={w}",
            lambda w=w: commutator(lap, mw(w), cap),
            lambda w=w: compose(mw(w + 1), two_x_plus(n, w + 1), cap) * (-w),
        )
        yield (
            f"comm/3forms/w={w}",
            f"the two written forms of [Delta, M_w] agree at w={w}",
            lambda w=w: compose(compose(mw(w), two_x_plus(n, w - 1), cap), m1, cap) * (-w),
            lambda w=w: compose(mw(w + 1), two_x_plus(n, w + 1), cap) * (-w),
        )
    m_minus1 = mw(-1)
    power = ident
    powers = [ident]
    for _ in range(k_max):
        power = compose(lap, power, cap)
        powers.append(power)
    for k in range(1, k_max + 1):
        yield (
            f"comm/4/k={k}",
            f"[Delta^k, M_-1] = k (2X + n + 2(k-1)) Delta^(k-1) at k={k}",
            lambda k=k: commutator(powers[k], m_minus1, cap),
            lambda k=k: compose(
                linear_combine([2, n + 2 * (k - 1)], [X, ident]), powers[k - 1], cap
            ) * k,
        )
    yield (
        "comm/4/k=1~3alt/w=-1",
        "k=1 of [Delta^k, M_-1] coincides with w=-1 of the M_(w+1) form: both are 2X + n",
        lambda: linear_combine([2, n], [X, ident]) @ powers[0],
        lambda: compose(mw(0), two_x_plus(n, 0), cap),
    )


def verify_commutators(n, w_range=(-3, 3), k_max=5, cap=None, inject_bug=False, apply_to=None):
    lo, hi = w_range
    report = Report(
        "verify comm", {"n": n, "w_range": f"{lo}..{hi}", "k_max": k_max}
    )
    for case_id, desc, lhs, rhs in commutator_sides(n, w_range, k_max, cap):
        if inject_bug and case_id == "comm/1":
            rhs = (lambda r: lambda: r() * 3)(rhs)
        report.check(case_id, desc, lambda lhs=lhs, rhs=rhs: _op_identity(lhs(), rhs()))
        if apply_to is not None:
            report.check(
                case_id + "/apply",
                f"{desc}, applied to {apply_to}",
                lambda lhs=lhs, rhs=rhs: _fn_identity(lhs()(apply_to), rhs()(apply_to)),
            )
    return report


# -- conformal motions ---------------------------------------------------


@dataclass(frozen=True)
class ConformalMotion:
    """A conformal map y -> C(y) of R^n with ``C* g_E = omega^2 g_E``.

    ``components`` and ``inverse`` are the coordinate functions of C and
    C^-1; ``omega`` is the conformal factor as a function of y.
    """

    name: str
    n: int
    components: tuple
    inverse: tuple
    omega: object

    def pullback(self, f):
        return pull(f, self.components)

    def pullback_inverse(self, f):
        return pull(f, self.inverse)

    def jacobian(self):
        return [[c.diff(j + 1) for j in range(self.n)] for c in self.components]

    def is_conformal(self):
        """Exact check of J^T J = omega^2 I."""
        J = self.jacobian()
        om2 = self.omega * self.omega
        for a in range(self.n):
            for b in range(a, self.n):
                entry = 0
                for i in range(self.n):
                    entry = J[i][a] * J[i][b] + entry
                target = om2 if a == b else 0
                if not equals(_lift(entry, self.n), _lift(target, self.n)):
                    return False, f"(J^T J)[{a + 1},{b + 1}] = {_lift(entry, self.n)}"
        return True, None

    def omega_power(self, p):
        """``omega ** p`` for integer or half-integer ``p``.

        Half-integer powers of omega = N/D are written (s/D)^(2p) with
        s = sqrt(N*D), so one radical serves every power of one motion.
        """
        p = Fraction(p)
        om = _lift(self.omega, self.n)
        if p.denominator == 1:
            return om ** int(p)
        if p.denominator != 2:
            raise ValueError(f"only integer and half-integer powers are supported, got {p}")
        if om == 1:
            return Polynomial.constant(self.n, 1)
        if isinstance(om, Polynomial):
            num, den = om, Polynomial.constant(self.n, 1)
        else:
            num, den = om.num, om.den
        root = RadicalElement.sqrt(num * den) / den
        return root ** int(2 * p)


def _lift(x, n):
    if isinstance(x, (int, Fraction)):
        return Polynomial.constant(n, x)
    return x


def pull(f, components):
    if isinstance(f, RadicalElement):
        raise ContextMismatch("cannot pull back a radical element through a motion")
    if isinstance(f, (Polynomial, RationalFunction)):
        return _lift(f.substitute(list(components)), len(components))
    return f


def translation(n, v):
    v = [Fraction(c) for c in v]
    ys = [Polynomial.variable(n, i + 1) for i in range(n)]
    return ConformalMotion(
        "translation",
        n,
        tuple(y + c for y, c in zip(ys, v)),
        tuple(y - c for y, c in zip(ys, v)),
        Polynomial.constant(n, 1),
    )


def rotation(n, R):
    R = [[Fraction(x) for x in row] for row in R]
    if len(R) != n or any(len(row) != n for row in R):
        raise ValueError("rotation matrix has the wrong shape")
    for a in range(n):
        for b in range(n):
            dot = sum(R[i][a] * R[i][b] for i in range(n))
            if dot != (1 if a == b else 0):
                raise ValueError("matrix is not exactly orthogonal")
    ys = [Polynomial.variable(n, i + 1) for i in range(n)]

    def apply(M):
        return tuple(
            sum((y.scale(M[i][j]) for j, y in enumerate(ys)), Polynomial.constant(n, 0))
            for i in range(n)
        )

    Rt = [[R[j][i] for j in range(n)] for i in range(n)]
    return ConformalMotion("rotation", n, apply(R), apply(Rt), Polynomial.constant(n, 1))


def rotation_345(n):
    """The exact rotation [[3/5, 4/5], [-4/5, 3/5]] in the first two coordinates."""
    if n < 2:
        raise ValueError("rotation needs n >= 2")
    R = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R[0][0], R[0][1], R[1][0], R[1][1] = (Fraction(3, 5), Fraction(4, 5), Fraction(-4, 5), Fraction(3, 5))
    return rotation(n, R)


def dilation(n, lam):
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("dilation factor must be positive")
    ys = [Polynomial.variable(n, i + 1) for i in range(n)]
    return ConformalMotion(
        "dilation",
        n,
        tuple(y.scale(lam) for y in ys),
        tuple(y.scale(1 / lam) for y in ys),
        Polynomial.constant(n, lam),
    )


def inversion(n):
    r2 = Polynomial.sum_of_squares(n)
    comps = tuple(Polynomial.variable(n, i + 1) / r2 for i in range(n))
    return ConformalMotion("inversion", n, comps, comps, 1 / r2)


def compose_motions(a, b):
    """The motion y -> a(b(y))."""
    if a.n != b.n:
        raise ContextMismatch("motions on different spaces")
    comps = tuple(pull(c, b.components) for c in a.components)
    inv = tuple(pull(c, a.inverse) for c in b.inverse)
    omega = _lift(pull(_lift(a.omega, a.n), b.components), a.n) * _lift(b.omega, b.n)
    return ConformalMotion(f"{a.name}.{b.name}", a.n, comps, inv, omega)


def generators(n):
    gens = [translation(n, [1] + [0] * (n - 1))]
    if n >= 2:
        gens.append(rotation_345(n))
    gens.append(dilation(n, 2))
    gens.append(inversion(n))
    return gens


def motion_family(n, max_length=2):
    """Generators plus all ordered words of length up to ``max_length``."""
    gens = generators(n)
    words = list(gens)
    layer = list(gens)
    for _ in range(max_length - 1):
        layer = [compose_motions(a, b) for a in gens for b in layer]
        words.extend(layer)
    return words


def motion_by_name(name, n):
    table = {m.name: m for m in generators(n)}
    parts = name.split(".")
    if any(p not in table for p in parts):
        raise ValueError(f"unknown motion {name!r}; known: {', '.join(sorted(table))}")
    motion = table[parts[-1]]
    for p in reversed(parts[:-1]):
        motion = compose_motions(table[p], motion)
    return motion


def motion_pullback(motion, f):
    return motion.pullback(f)


def iterate_laplacian(f, k):
    for _ in range(k):
        f = fn_laplacian(f)
    return f


def covariance_sides(motion, k, f):
    """``(Delta^k f, (C^-1)* omega^(-n/2-k) Delta^k omega^(n/2-k) C* f)``."""
    n = motion.n
    half_n = Fraction(n, 2)
    g = motion.pullback(f)
    g = motion.omega_power(half_n - k) * g
    g = iterate_laplacian(g, k)
    g = motion.omega_power(-half_n - k) * g
    if isinstance(g, RadicalElement):
        raise ContextMismatch("weighted result still carries a radical")
    rhs = motion.pullback_inverse(g)
    return iterate_laplacian(f, k), rhs


def verify_translaw(n, k, motion, max_degree=None, functions=None, radical="auto"):
    if k < 1:
        raise ValueError("k must be >= 1")
    if radical not in ("on", "off", "auto"):
        raise ValueError(f"radical must be on, off or auto, got {radical!r}")
    if radical == "off" and n % 2 == 1 and _lift(motion.omega, n) != 1:
        raise ValueError(f"{motion.name} with odd n={n} needs radical mode (omega^(n/2) is not rational)")
    max_degree = 2 * k + 2 if max_degree is None else max_degree
    report = Report(
        "verify covariance",
        {"n": n, "k": k, "motion": motion.name, "max_degree": max_degree},
    )
    prefix = f"covariance/{motion.name}/n={n}/k={k}"
    report.check(prefix + "/jacobian", "J^T J = omega^2 I", motion.is_conformal)
    if functions is None:
        functions = monomials(n, max_degree)
    for f in functions:
        report.check(
            f"{prefix}/f={f}",
            f"Delta^k f = (C^-1)* omega^(-n/2-k) Delta^k omega^(n/2-k) C* f for f = {f}",
            lambda f=f: _fn_identity(*covariance_sides(motion, k, f)),
        )
    return report
