import math
import random
from fractions import Fraction

import pytest

from conflap import numcheck, sphere
from conflap.exactfn import Polynomial, RadicalElement
from conflap.numcheck import SampleConfig, SamplingError, draw_points, fd_crosscheck, relative_error, sample_compare


def y(i, n):
    return Polynomial.variable(n, i)


def test_relative_error_uses_absolute_floor():
    assert relative_error(1e-12, 0.0) == pytest.approx(1e-12)
    assert relative_error(2.0, 2.0 + 2e-9) == pytest.approx(1e-9)


def test_config_validation():
    with pytest.raises(ValueError):
        SampleConfig(tolerance=0)
    with pytest.raises(ValueError):
        SampleConfig(sample_count=0)


def test_identical_sides_have_zero_error():
    f = y(1, 2) ** 2 / (1 + y(2, 2) ** 2)
    report = sample_compare(f, f)
    assert report.passed and report.data["max_error"] == 0


def test_main_sides_sampled():
    lhs, rhs = sphere.main_sides(3, 1, y(1, 3), True)
    assert sample_compare(lhs, rhs, SampleConfig(20, 1e-8)).passed


def test_planted_discrepancy_fails():
    f = y(1, 2)
    report = sample_compare(f, f + Fraction(1, 1000))
    assert report.status == "fail" and "max error" in report.cases[0].witness


def test_sampling_is_deterministic():
    cfg = SampleConfig(seed=7)
    a = draw_points(2, cfg)
    b = draw_points(2, cfg)
    assert a == b and len(a) == 20
    assert draw_points(2, SampleConfig(seed=8)) != a


def test_sphere_samples_lie_on_sphere():
    for p in draw_points(4, SampleConfig(sample_count=5), sphere=True):
        assert math.fsum(v * v for v in p) == pytest.approx(1.0)


def test_sampling_gives_up_on_poles():
    cfg = SampleConfig(sample_count=3, max_retries=20, box=(Fraction(0), Fraction(0)))
    f = 1 / y(1, 1)
    assert sample_compare(f, f, cfg).status == "fail"
    with pytest.raises(SamplingError):
        draw_points(1, cfg, accept=lambda p: False)


def test_fd_square():
    assert fd_crosscheck(y(1, 1) ** 2, 1, [1.0], h=1e-5).passed


def test_fd_quotient():
    t = y(1, 1)
    assert fd_crosscheck(1 / (1 + t**2), 1, [1.0]).passed


def test_fd_radical():
    u = Polynomial.variable(3, 3) + 1
    assert fd_crosscheck(RadicalElement.sqrt(u), 3, [0.0, 0.0, 0.0]).passed


def test_fd_catches_wrong_derivative():
    class Wrong:
        # a function whose claimed derivative is off by one
        nvars = 1

        def evaluate_float(self, p):
            return p[0] ** 2

        def diff(self, i):
            return y(1, 1) * 2 + 1

    assert not fd_crosscheck(Wrong(), 1, [1.0]).passed


def test_fd_suite():
    report = numcheck.fd_suite(count=100, points_per=5)
    assert report.passed and len(report.cases) == 500


def test_random_rational_is_pole_free():
    rng = random.Random(1)
    for _ in range(20):
        f = numcheck.random_rational(rng, 2, 3)
        assert f.evaluate_float([0.0, 0.0]) == f.evaluate_float([0.0, 0.0])


@pytest.mark.parametrize(
    "builder",
    [
        lambda cfg: numcheck.shadow_rn(3, 3, cfg),
        lambda cfg: numcheck.shadow_comm(2, cfg=cfg),
        lambda cfg: numcheck.shadow_main(3, 2, cfg=cfg),
        lambda cfg: numcheck.shadow_conformality(3, cfg),
        lambda cfg: numcheck.shadow_spectrum(4, 2, 3, cfg),
    ],
)
def test_shadows_pass(builder):
    report = builder(SampleConfig())
    assert report.passed, report.to_text()


def test_shadow_covariance_inversion():
    from conflap.flat import inversion

    assert numcheck.shadow_covariance(3, 1, inversion(3), max_degree=3).passed


def test_fd_sphere_laplacian_of_harmonic():
    F = y(1, 3) * y(2, 3)
    point = [0.3, 0.4, math.sqrt(1 - 0.25)]
    assert numcheck.fd_sphere_laplacian(F, 2, point) == pytest.approx(-6 * 0.3 * 0.4, rel=1e-6)
