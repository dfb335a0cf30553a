"""Seeded randomized property suites for the exact engine.

Each suite draws its instances from ``random.Random(seed)`` and returns a
Report with one case per instance.
"""

import random
from fractions import Fraction

from . import diffop
from .diffop import DiffOp, apply, commutator, compose
from .exactfn import Polynomial, RadicalElement, equals, evaluate, laplacian as fn_laplacian
from .numcheck import random_polynomial, random_rational
from .report import Report
from .sphere import reduce_mod_sphere, sphere_laplacian

DEFAULT_INSTANCES = 200


def random_fn(rng, nvars, max_degree=4):
    if rng.random() < 0.5:
        return random_polynomial(rng, nvars, max_degree)
    return random_rational(rng, nvars, max_degree)


def random_diffop(rng, n, max_order=2, coef_degree=2):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        alpha = [0] * n
        for _ in range(rng.randint(0, max_order)):
            alpha[rng.randrange(n)] += 1
        terms[tuple(alpha)] = random_polynomial(rng, n, coef_degree, coef_range=3)
    return DiffOp(n, terms)


def _run(name, count, seed, body):
    rng = random.Random(seed)
    report = Report(f"properties {name}", {"instances": count}, seed=seed)
    for idx in range(count):
        ok, witness = body(rng)
        report.add(f"property/{name}/{idx}", name.replace("_", " "), ok, witness)
    return report


def leibniz(count=DEFAULT_INSTANCES, seed=42):
    def body(rng):
        n = rng.randint(1, 3)
        f, g = random_fn(rng, n), random_fn(rng, n)
        i = rng.randint(1, n)
        ok = equals((f * g).diff(i), f.diff(i) * g + f * g.diff(i))
        return ok, None if ok else f"f={f}, g={g}, i={i}"

    return _run("leibniz", count, seed, body)


def commuting_partials(count=DEFAULT_INSTANCES, seed=42):
    def body(rng):
        n = rng.randint(1, 3)
        f = random_fn(rng, n)
        i, j = rng.randint(1, n), rng.randint(1, n)
        ok = equals(f.diff(i).diff(j), f.diff(j).diff(i))
        return ok, None if ok else f"f={f}, i={i}, j={j}"

    return _run("commuting_partials", count, seed, body)


def equality_congruence(count=DEFAULT_INSTANCES, seed=42):
    """Equal elements written differently stay equal under the ring operations."""

    def body(rng):
        n = rng.randint(1, 3)
        f, g, h = (random_fn(rng, n, 3) for _ in range(3))
        t = random_polynomial(rng, n, 2) + 1 + Polynomial.sum_of_squares(n)
        f2 = (f * t) / t
        ok = (
            equals(f, f2)
            and equals(f2, f)
            and equals(f + g, f2 + g)
            and equals(f * h, f2 * h)
            and (equals(f, g) == equals(f2, g))
        )
        return ok, None if ok else f"f={f}"

    return _run("equality_congruence", count, seed, body)


def evaluation_homomorphism(count=DEFAULT_INSTANCES, seed=42):
    def body(rng):
        n = rng.randint(1, 3)
        f, g = random_fn(rng, n, 3), random_fn(rng, n, 3)
        p = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
        ok = evaluate(f * g, p) == evaluate(f, p) * evaluate(g, p) and evaluate(f + g, p) == evaluate(f, p) + evaluate(g, p)
        return ok, None if ok else f"f={f}, g={g}, point={p}"

    return _run("evaluation_homomorphism", count, seed, body)


def compose_associativity(count=DEFAULT_INSTANCES, seed=42):
    def body(rng):
        n = rng.randint(1, 3)
        P, Q, R = (random_diffop(rng, n) for _ in range(3))
        ok = compose(P, compose(Q, R)) == compose(compose(P, Q), R)
        return ok, None if ok else f"P={P}, Q={Q}, R={R}"

    return _run("compose_associativity", count, seed, body)


def apply_homomorphism(count=DEFAULT_INSTANCES, seed=42):
    def body(rng):
        n = rng.randint(1, 3)
        P, Q = random_diffop(rng, n), random_diffop(rng, n)
        f = random_polynomial(rng, n, 4)
        ok = equals(apply(compose(P, Q), f), apply(P, apply(Q, f)))
        return ok, None if ok else f"P={P}, Q={Q}, f={f}"

    return _run("apply_homomorphism", count, seed, body)


def commutator_laws(count=DEFAULT_INSTANCES, seed=42):
    """Antisymmetry, bilinearity and the Jacobi identity."""

    def body(rng):
        n = rng.randint(1, 3)
        P, Q, R = (random_diffop(rng, n) for _ in range(3))
        a = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        anti = (commutator(P, Q) + commutator(Q, P)).is_zero()
        bilinear = commutator(P * a + Q, R) == commutator(P, R) * a + commutator(Q, R)
        jacobi = (
            commutator(P, commutator(Q, R)) + commutator(Q, commutator(R, P)) + commutator(R, commutator(P, Q))
        ).is_zero()
        ok = anti and bilinear and jacobi
        return ok, None if ok else f"anti={anti}, bilinear={bilinear}, jacobi={jacobi}"

    return _run("commutator_laws", count, seed, body)


def power_coherence(count=20, seed=42):
    def body(rng):
        n = rng.randint(1, 3)
        k = rng.randint(1, 4)
        lap = diffop.laplacian(n)
        f = random_polynomial(rng, n, 2 * k + 1)
        pk = lap**k
        ok = compose(lap, lap ** (k - 1)) == pk
        g = f
        for _ in range(k):
            g = apply(lap, g)
        ok = ok and equals(apply(pk, f), g)
        return ok, None if ok else f"n={n}, k={k}, f={f}"

    return _run("power_coherence", count, seed, body)


def reduce_idempotence(count=DEFAULT_INSTANCES, seed=42):
    def body(rng):
        n = rng.randint(1, 3)
        F, G = random_fn(rng, n + 1), random_polynomial(rng, n + 1, 3)
        once = reduce_mod_sphere(F, n)
        twice = reduce_mod_sphere(once.value, n)
        same = _same_repr(once.value, twice.value)
        product = reduce_mod_sphere(F * G, n) == reduce_mod_sphere(once.value * reduce_mod_sphere(G, n).value, n)
        ok = same and product
        return ok, None if ok else f"F={F}"

    return _run("reduce_idempotence", count, seed, body)


def _same_repr(a, b):
    if type(a) is not type(b):
        return False
    if isinstance(a, Polynomial):
        return a == b
    return a.num == b.num and a.den_factors == b.den_factors


def extension_independence(count=DEFAULT_INSTANCES, seed=42):
    def body(rng):
        n = rng.randint(1, 3)
        N = n + 1
        F = random_fn(rng, N, 3)
        G = random_polynomial(rng, N, 2, coef_range=3)
        ideal = Polynomial.sum_of_squares(N) - 1
        ok = sphere_laplacian(F, n) == sphere_laplacian(F + ideal * G, n)
        return ok, None if ok else f"F={F.format('x')}, G={G.format('x')}"

    return _run("extension_independence", count, seed, body)


def radical_consistency(count=DEFAULT_INSTANCES, seed=42):
    """(a + b s) times its inverse is 1 whenever the norm is nonzero."""

    def body(rng):
        n = rng.randint(1, 3)
        u = Polynomial.sum_of_squares(n) + rng.randint(0, 3)
        a, b = random_fn(rng, n, 2), random_fn(rng, n, 2)
        x = RadicalElement(a, b, u)
        if x.norm() == 0:
            return True, None
        ok = equals(x * x.inverse(), Polynomial.constant(n, 1))
        return ok, None if ok else f"a={a}, b={b}, u={u}"

    return _run("radical_consistency", count, seed, body)


def factor_commutation(count=DEFAULT_INSTANCES, seed=42):
    def body(rng):
        n = rng.randint(1, 3)
        u = reduce_mod_sphere(random_fn(rng, n + 1, 3), n)
        a, b = (Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(2))

        def factor(c, v):
            return sphere_laplacian(v) - v * c

        ok = factor(a, factor(b, u)) == factor(b, factor(a, u))
        return ok, None if ok else f"u={u}, a={a}, b={b}"

    return _run("factor_commutation", count, seed, body)


def homogeneous_eigenlaw(count=DEFAULT_INSTANCES, seed=42):
    def body(rng):
        n = rng.randint(1, 3)
        N = n + 1
        d = rng.randint(0, 4)
        p = Polynomial.constant(N, 0)
        for _ in range(rng.randint(1, 4)):
            exps = [0] * N
            for _ in range(d):
                exps[rng.randrange(N)] += 1
            p = p + Polynomial.monomial(exps, rng.randint(-5, 5))
        want = reduce_mod_sphere(fn_laplacian(p) - p * (d * (d + n - 1)), n)
        ok = sphere_laplacian(reduce_mod_sphere(p, n)) == want
        return ok, None if ok else f"p={p.format('x')}"

    return _run("homogeneous_eigenlaw", count, seed, body)


SUITES = {
    "leibniz": leibniz,
    "commuting_partials": commuting_partials,
    "equality_congruence": equality_congruence,
    "evaluation_homomorphism": evaluation_homomorphism,
    "compose_associativity": compose_associativity,
    "apply_homomorphism": apply_homomorphism,
    "commutator_laws": commutator_laws,
    "reduce_idempotence": reduce_idempotence,
    "extension_independence": extension_independence,
    "radical_consistency": radical_consistency,
    "factor_commutation": factor_commutation,
    "homogeneous_eigenlaw": homogeneous_eigenlaw,
}


def run_all(count=DEFAULT_INSTANCES, seed=42):
    report = Report("properties", {"instances": count}, seed=seed)
    for suite in SUITES.values():
        report.merge(suite(count, seed))
    report.merge(power_coherence(seed=seed))
    return report
