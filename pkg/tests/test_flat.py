from fractions import Fraction

import pytest
import sympy

from conflap import diffop, flat
from conflap.diffop import apply, commutator
from conflap.exactfn import Polynomial, RadicalElement, equals, laplacian

from test_exactfn import Y, to_sympy


def y(i, n):
    return Polynomial.variable(n, i)


# -- factorized power of the Laplacian -----------------------------------------


@pytest.mark.parametrize("n,k", [(2, 2), (1, 1), (3, 4), (1, 3), (2, 3)])
def test_verify_rn(n, k):
    report = flat.verify_rn(n, k)
    assert report.passed, report.to_text()


def test_rn_k1_both_sides_are_laplacian():
    lhs, rhs = flat.build_rn_sides(3, 1)
    assert lhs == diffop.laplacian(3) == rhs


def test_rn_against_sympy_n1_k2():
    # independent oracle: expand both sides symbolically on a generic f
    t = Y[0]
    f = sympy.Function("f")(t)
    rho = 1 + t**2

    def M(w, g):
        return 2**w * rho ** (-w) * g

    lhs = sympy.diff(M(-2, sympy.diff(f, t, 2)), t, 2) + 2 * M(2, M(-2, sympy.diff(f, t, 2)))
    rhs = M(-1, sympy.diff(M(-1, f), t, 4))
    assert sympy.simplify(lhs - rhs) == 0
    assert flat.verify_rn(1, 2).passed


def test_rn_apply_to():
    report = flat.verify_rn(2, 2, apply_to=y(1, 2) ** 3 * y(2, 2))
    assert report.passed and len(report.cases) == 2


def test_rn_limit_status():
    report = flat.verify_rn(3, 3, cap=50)
    assert report.status == "limit"


# -- commutators ---------------------------------------------------------


def test_commutators_n3():
    report = flat.verify_commutators(3, (-3, 3), 4)
    assert report.passed, report.to_text()
    ids = {c.id for c in report.cases}
    assert "comm/1" in ids and "comm/4/k=4" in ids and "comm/3alt/w=-3" in ids


@pytest.mark.parametrize("n", [1, 2, 4])
def test_commutators_other_dims(n):
    assert flat.verify_commutators(n, (-3, 3), 5).passed


def test_euler_commutes_with_trivial_weight():
    assert commutator(diffop.euler(2), diffop.m_weight(0, 2)).is_zero()


def test_k1_coincides_with_w_minus_one():
    n = 3
    lap, X = diffop.laplacian(n), diffop.euler(n)
    two_x_plus_n = X * 2 + diffop.DiffOp.identity(n) * n
    assert commutator(lap, diffop.m_weight(-1, n)) == two_x_plus_n
    assert any(c.id == "comm/4/k=1~3alt/w=-1" and c.status == "pass" for c in flat.verify_commutators(n).cases)


def test_weight_commutator_against_sympy():
    # [X, M_w] = -w |y|^2 M_(w+1), checked on a generic function in one variable
    t = Y[0]
    f = sympy.Function("f")(t)
    for w in (-2, 1, 3):
        Mw = 2**w * (1 + t**2) ** (-w)
        Mw1 = 2 ** (w + 1) * (1 + t**2) ** (-w - 1)
        lhs = t * sympy.diff(Mw * f, t) - Mw * t * sympy.diff(f, t)
        assert sympy.simplify(lhs + w * t**2 * Mw1 * f) == 0


def test_injected_bug_fails_with_witness():
    report = flat.verify_commutators(2, inject_bug=True)
    bad = [c for c in report.cases if c.status == "fail"]
    assert [c.id for c in bad] == ["comm/1"]
    assert "d[" in bad[0].witness


# -- motions -------------------------------------------------------------


def test_dilation_pullback():
    m = flat.dilation(2, 2)
    assert m.pullback(y(1, 2) ** 2) == y(1, 2) ** 2 * 4


def test_inversion_pullback():
    got = flat.inversion(2).pullback(y(1, 2))
    assert equals(got, y(1, 2) / Polynomial.sum_of_squares(2))


def test_rotation_pullback():
    got = flat.rotation_345(2).pullback(y(1, 2))
    assert got == y(1, 2) * Fraction(3, 5) + y(2, 2) * Fraction(4, 5)


def test_rotation_must_be_orthogonal():
    with pytest.raises(ValueError):
        flat.rotation(2, [[1, 1], [0, 1]])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_all_motions_conformal(n):
    for m in flat.motion_family(n):
        ok, witness = m.is_conformal()
        assert ok, (m.name, witness)


def test_motion_family_size():
    assert len(flat.motion_family(3)) == 4 + 16
    assert flat.motion_by_name("dilation.inversion", 2).name == "dilation.inversion"
    with pytest.raises(ValueError):
        flat.motion_by_name("shear", 2)


def test_composed_motion_is_composition():
    a, b = flat.dilation(2, 2), flat.inversion(2)
    ab = flat.compose_motions(a, b)
    f = y(1, 2) ** 2 + y(2, 2)
    assert equals(ab.pullback(f), b.pullback(a.pullback(f)))
    for i, c in enumerate(ab.components):
        assert equals(ab.pullback_inverse(c), y(i + 1, 2))


# -- covariance ----------------------------------------------------------


def test_dilation_example():
    m = flat.dilation(2, 2)
    f = y(1, 2) ** 2
    assert laplacian(m.pullback(f)) == 8
    lhs, rhs = flat.covariance_sides(m, 1, f)
    assert equals(lhs, rhs)


def test_kelvin_image_is_harmonic():
    m = flat.inversion(2)
    assert equals(laplacian(m.pullback(y(1, 2))), 0)
    assert flat.verify_translaw(2, 1, m, functions=[y(1, 2)]).passed


def test_inversion_n3_radical():
    m = flat.inversion(3)
    assert isinstance(m.omega_power(Fraction(1, 2)), RadicalElement)
    report = flat.verify_translaw(3, 1, m, max_degree=3)
    assert report.passed, report.to_text()


def test_inversion_against_sympy_n3():
    # independent oracle: omega = |y|^-2, so the outer weight is |y|^(n+2k)
    y1, y2, y3 = Y[:3]
    r2 = y1**2 + y2**2 + y3**2
    f = y1 * y2**2
    inv = {y1: y1 / r2, y2: y2 / r2, y3: y3 / r2}
    g = sympy.sqrt(r2) ** (2 - 3) * f.subs(inv, simultaneous=True)
    lap = sum(sympy.diff(g, v, 2) for v in (y1, y2, y3))
    rhs = (sympy.sqrt(r2) ** (3 + 2) * lap).subs(inv, simultaneous=True)
    lhs = sum(sympy.diff(f, v, 2) for v in (y1, y2, y3))
    assert sympy.simplify(rhs - lhs) == 0
    ours_lhs, ours_rhs = flat.covariance_sides(flat.inversion(3), 1, Polynomial.variable(3, 1) * Polynomial.variable(3, 2) ** 2)
    assert sympy.simplify(to_sympy(ours_rhs) - lhs) == 0


@pytest.mark.parametrize("name", ["translation", "rotation", "dilation", "inversion", "inversion.dilation"])
def test_covariance_n2_k2(name):
    report = flat.verify_translaw(2, 2, flat.motion_by_name(name, 2))
    assert report.passed, report.to_text()


def test_wrong_weight_is_detected():
    m = flat.inversion(2)
    f = y(1, 2) ** 2
    g = laplacian(m.omega_power(1) * m.pullback(f))  # should be exponent n/2 - k = 0
    rhs = m.pullback_inverse(m.omega_power(-2) * g)
    assert not equals(laplacian(f), rhs)


def test_radical_off_rejected_for_odd_n():
    with pytest.raises(ValueError):
        flat.verify_translaw(3, 1, flat.inversion(3), radical="off")
    assert flat.verify_translaw(3, 1, flat.translation(3, [1, 0, 0]), max_degree=2, radical="off").passed
