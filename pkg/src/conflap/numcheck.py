"""Floating-point shadow of the exact engine.

Sampling uses ``random.Random`` (Mersenne Twister MT19937) seeded from
``SampleConfig.seed``; with the default seed 42 every report is
reproducible.  Errors are relative, falling back to absolute when both
sides are below 1e-10 in magnitude.
"""

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConflapError, PoleError
from .exactfn import (
    FN_TYPES,
    Polynomial,
    RadicalElement,
    RationalFunction,
    evaluate_float,
    lift,
    min_denominator,
    partial_derivative,
)
from .report import Report
from .sphere import SphereFunction

ABS_FLOOR = 1e-10


class SamplingError(ConflapError, RuntimeError):
    """No pole-free sample could be drawn within the retry budget."""


@dataclass
class SampleConfig:
    sample_count: int = 20
    tolerance: float = 1e-8
    seed: int = 42
    box: tuple = (Fraction(-2), Fraction(2))
    pole_margin: float = 1e-3
    max_retries: int = 1000
    boxes: list = field(default=None)

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError("sample_count must be positive")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    def interval(self, i):
        if self.boxes is not None:
            return self.boxes[i]
        return self.box


def relative_error(a, b):
    scale = max(abs(a), abs(b))
    if scale < ABS_FLOOR:
        return abs(a - b)
    return abs(a - b) / scale


def _radical_base(f):
    return f.base if isinstance(f, RadicalElement) else None


def _acceptable(fs, point, cfg):
    for f in fs:
        if min_denominator(f, point) < cfg.pole_margin:
            return False
        base = _radical_base(f)
        if base is not None and base.evaluate_float(point) < cfg.pole_margin:
            return False
    return True


def draw_points(nvars, cfg, accept=lambda p: True, sphere=False, rng=None):
    """``cfg.sample_count`` points, each redrawn until ``accept`` holds."""
    rng = rng or random.Random(cfg.seed)
    points = []
    for _ in range(cfg.sample_count):
        for _attempt in range(cfg.max_retries):
            p = [rng.uniform(float(lo), float(hi)) for lo, hi in (cfg.interval(i) for i in range(nvars))]
            if sphere:
                r = math.sqrt(sum(c * c for c in p))
                if r < 1e-6:
                    continue
                p = [c / r for c in p]
                if 1 + p[-1] < cfg.pole_margin:
                    continue
            if accept(p):
                points.append(p)
                break
        else:
            raise SamplingError(f"no acceptable sample after {cfg.max_retries} draws")
    return points


def sample_compare(lhs, rhs, cfg=None, case_id="sample", description="both sides agree numerically"):
    cfg = cfg or SampleConfig()
    sphere = isinstance(lhs, SphereFunction) or isinstance(rhs, SphereFunction)
    if sphere:
        n = lhs.n if isinstance(lhs, SphereFunction) else rhs.n
        a = lhs.value if isinstance(lhs, SphereFunction) else lift(lhs, n + 1)
        b = rhs.value if isinstance(rhs, SphereFunction) else lift(rhs, n + 1)
    else:
        a = lhs if isinstance(lhs, FN_TYPES) else None
        b = rhs if isinstance(rhs, FN_TYPES) else None
        nvars = (a or b).nvars
        a = lift(lhs, nvars)
        b = lift(rhs, nvars)
    nvars = a.nvars
    report = Report(
        "numcheck sample",
        {"samples": cfg.sample_count, "tol": cfg.tolerance},
        seed=cfg.seed,
    )
    try:
        points = draw_points(nvars, cfg, lambda p: _acceptable((a, b), p, cfg), sphere=sphere)
    except SamplingError as exc:
        report.add(case_id, description, "fail", str(exc))
        return report
    worst, where = 0.0, None
    for p in points:
        try:
            err = relative_error(evaluate_float(a, p), evaluate_float(b, p))
        except (PoleError, ZeroDivisionError, OverflowError) as exc:
            report.add(case_id, description, "fail", f"evaluation failed at {p}: {exc}")
            return report
        if not err <= worst:
            worst, where = err, p
    ok = worst <= cfg.tolerance
    report.add(
        case_id,
        f"{description} (max error {worst:.3e})",
        ok,
        None if ok else f"max error {worst:.3e} at {where}",
    )
    report.data["max_error"] = worst
    return report


def fd_crosscheck(f, i, point, h=1e-5, case_id=None):
    """Central difference in variable ``i`` against the exact partial derivative."""
    point = [float(c) for c in point]
    exact = evaluate_float(partial_derivative(f, i), point)
    plus = list(point)
    minus = list(point)
    plus[i - 1] += h
    minus[i - 1] -= h
    try:
        fd = (evaluate_float(f, plus) - evaluate_float(f, minus)) / (2 * h)
    except (PoleError, ZeroDivisionError) as exc:
        raise PoleError(f"pole within the stencil around {point}") from exc
    diff = abs(fd - exact)
    ok = diff <= max(1e-6, 1e-6 * abs(exact))
    report = Report("numcheck fd", {"i": i, "h": h})
    report.add(
        case_id or f"fd/i={i}",
        f"d/dx{i} at {['%.4g' % c for c in point]}: exact {exact:.10g}, fd {fd:.10g}",
        ok,
        None if ok else f"|fd - exact| = {diff:.3e}",
    )
    return report


def random_polynomial(rng, nvars, max_degree, coef_range=5):
    terms = {}
    for _ in range(rng.randint(1, 6)):
        exps = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(nvars)] += 1
        terms[tuple(exps)] = Fraction(rng.randint(-coef_range, coef_range), rng.randint(1, 3))
    return Polynomial(nvars, terms)


def random_rational(rng, nvars, max_degree):
    """Random numerator over a denominator bounded below by 1 on R^n."""
    num = random_polynomial(rng, nvars, max_degree)
    den = Polynomial.constant(nvars, rng.randint(1, 3))
    for i in range(1, nvars + 1):
        c = rng.randint(0, 2)
        if c:
            den = den + Polynomial.variable(nvars, i) ** 2 * c
    if den.is_constant():
        return num
    return num / den


def fd_suite(count=100, points_per=5, seed=42, h=1e-5):
    rng = random.Random(seed)
    report = Report("numcheck fd-suite", {"count": count, "points": points_per, "h": h}, seed=seed)
    for idx in range(count):
        nvars = rng.randint(1, 3)
        f = random_rational(rng, nvars, 3)
        for j in range(points_per):
            p = [rng.uniform(-2, 2) for _ in range(nvars)]
            i = rng.randint(1, nvars)
            sub = fd_crosscheck(f, i, p, h, case_id=f"fd/f={idx}/p={j}")
            report.merge(sub)
    return report


# -- numeric shadows of the exact verifiers ------------------------------


def _shadow_ops(report, prefix, lhs, rhs, cfg):
    keys = sorted(set(lhs.terms) | set(rhs.terms))
    n = lhs.nvars
    zero = Polynomial.constant(n, 0)
    worst = 0.0
    failed = []
    for alpha in keys:
        sub = sample_compare(lhs.terms.get(alpha, zero), rhs.terms.get(alpha, zero), cfg)
        worst = max(worst, sub.data.get("max_error", math.inf))
        if not sub.passed:
            failed.append(f"d[{','.join(map(str, alpha))}]: {sub.cases[0].witness}")
    ok = not failed
    report.add(
        prefix,
        f"coefficientwise sampling of {len(keys)} coefficients (max error {worst:.3e})",
        ok,
        None if ok else "; ".join(failed[:3]),
    )


def shadow_rn(n, k, cfg=None):
    from .flat import build_rn_sides

    cfg = cfg or SampleConfig()
    report = Report("numcheck rn", {"n": n, "k": k}, seed=cfg.seed)
    lhs, rhs = build_rn_sides(n, k)
    _shadow_ops(report, f"shadow/rn/n={n}/k={k}", lhs, rhs, cfg)
    return report


def shadow_comm(n, w_range=(-3, 3), k_max=5, cfg=None):
    from .flat import commutator_sides

    cfg = cfg or SampleConfig()
    report = Report("numcheck comm", {"n": n, "w_range": f"{w_range[0]}..{w_range[1]}", "k_max": k_max}, seed=cfg.seed)
    for case_id, _desc, lhs, rhs in commutator_sides(n, w_range, k_max):
        _shadow_ops(report, f"shadow/{case_id}/n={n}", lhs(), rhs(), cfg)
    return report


def _shadow_fns(report, case_id, lhs, rhs, cfg):
    sub = sample_compare(lhs, rhs, cfg, case_id=case_id)
    report.merge(sub)


def shadow_covariance(n, k, motion, max_degree=None, cfg=None):
    from .exactfn import monomials
    from .flat import covariance_sides

    cfg = cfg or SampleConfig()
    max_degree = 2 * k + 2 if max_degree is None else max_degree
    report = Report("numcheck covariance", {"n": n, "k": k, "motion": motion.name}, seed=cfg.seed)
    for f in monomials(n, max_degree):
        lhs, rhs = covariance_sides(motion, k, f)
        _shadow_fns(report, f"shadow/covariance/{motion.name}/n={n}/k={k}/f={f}", lhs, rhs, cfg)
    return report


def shadow_main(n, k, max_degree=None, cfg=None, command="main"):
    from .exactfn import monomials
    from .sphere import main_sides

    cfg = cfg or SampleConfig()
    max_degree = 2 * k + 1 if max_degree is None else max_degree
    report = Report(f"numcheck {command}", {"n": n, "k": k, "max_degree": max_degree}, seed=cfg.seed)
    radical = n % 2 == 1
    for f in monomials(n, max_degree):
        lhs, rhs = main_sides(n, k, f, radical)
        _shadow_fns(report, f"shadow/{command}/n={n}/k={k}/f={f}", lhs, rhs, cfg)
    return report


def shadow_conformality(n, cfg=None):
    from .sphere import inverse_stereo

    cfg = cfg or SampleConfig()
    report = Report("numcheck conformality", {"n": n}, seed=cfg.seed)
    sigma = inverse_stereo(n)
    rho = Polynomial.sum_of_squares(n) + 1
    factor = 2 / rho
    J = [[c.diff(j + 1) for j in range(n)] for c in sigma]
    for a in range(n):
        for b in range(a, n):
            entry = 0
            for row in J:
                entry = row[a] * row[b] + entry
            want = factor * factor if a == b else Polynomial.constant(n, 0)
            _shadow_fns(report, f"shadow/conformality/n={n}/gram/{a + 1},{b + 1}", lift(entry, n), want, cfg)
    _shadow_fns(report, f"shadow/conformality/n={n}/weight", sigma[-1] + 1, factor, cfg)
    return report


def shadow_spectrum(n, k, l_max, cfg=None):
    from .sphere import SphereOpSpec, eigenvalue, harmonic_basis, reduce_mod_sphere, sphere_power_apply

    cfg = cfg or SampleConfig()
    report = Report("numcheck spectrum", {"n": n, "k": k, "l_max": l_max}, seed=cfg.seed)
    spec = SphereOpSpec.build(n, k)
    for l in range(l_max + 1):
        mu = eigenvalue(n, k, l)
        for idx, h in enumerate(harmonic_basis(n, l)):
            u = reduce_mod_sphere(h, n)
            _shadow_fns(report, f"shadow/spectrum/n={n}/k={k}/l={l}/h={idx}", sphere_power_apply(spec, u), u * mu, cfg)
    return report


def fd_sphere_laplacian(F, n, point, h=1e-2):
    """Laplace-Beltrami of ``F`` restricted to S^n by finite differences.

    Uses the degree-0 extension G(x) = F(x/|x|), whose flat Laplacian on the
    unit sphere equals the sphere Laplacian, with central second differences
    at steps h and h/2 combined by Richardson extrapolation (O(h^4)).
    """
    N = n + 1

    def G(x):
        r = math.sqrt(sum(c * c for c in x))
        return evaluate_float(F, [c / r for c in x])

    centre = G(point)

    def stencil(step):
        total = 0.0
        for i in range(N):
            plus = list(point)
            minus = list(point)
            plus[i] += step
            minus[i] -= step
            total += (G(plus) - 2 * centre + G(minus)) / (step * step)
        return total

    return (4 * stencil(h / 2) - stencil(h)) / 3


def fd_sphere_check(u, cfg=None, tol=1e-5, h=1e-2):
    """Compare the exact sphere Laplacian of ``u`` with the stencil at sampled points."""
    from .sphere import sphere_laplacian

    cfg = cfg or SampleConfig()
    n = u.n
    exact = sphere_laplacian(u).value
    F = u.value
    report = Report("numcheck fd-sphere", {"n": n, "tol": tol, "h": h}, seed=cfg.seed)
    margin = max(cfg.pole_margin, 0.2)
    points = draw_points(
        n + 1,
        cfg,
        lambda p: _acceptable((F, exact), p, cfg) and 1 + p[-1] > margin,
        sphere=True,
    )
    worst = 0.0
    for p in points:
        err = relative_error(evaluate_float(exact, p), fd_sphere_laplacian(F, n, p, h))
        worst = max(worst, err)
    ok = worst <= tol
    report.add(
        f"fd-sphere/n={n}",
        f"Delta_S {u} against finite differences (max error {worst:.3e})",
        ok,
        None if ok else f"max error {worst:.3e}",
    )
    return report
