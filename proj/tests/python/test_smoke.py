import cmath
import math

import pytest

import reslab


def test_leading_zero_two_pipelines():
    d = reslab.delta_bisection(3.0)
    assert 0.5 < d < 1
    assert abs(d - reslab.pressure_delta(3.0)) < 1e-4
    assert abs(reslab.fredholm_det(d, 3.0)) < 1e-8


def test_determinant_matches_euler_product():
    det = reslab.fredholm_det(2.5, 3.0)
    euler = reslab.euler_product(2.5, 3.0)
    assert abs(det - euler["value"]) < 1e-4
    assert not euler["warning"]


def test_parity_blocks_multiply():
    s = complex(0.8, 3.0)
    full = reslab.fredholm_det(s, 3.0)
    prod = reslab.fredholm_det(s, 3.0, block="even") * reslab.fredholm_det(s, 3.0, block="odd")
    assert abs(full - prod) < 1e-10


def test_operator_matrix_shape_and_entry():
    m = reslab.operator_matrix(2.0, 3.0, degree=8)
    assert m.shape == (8, 8)
    assert abs(m[0, 0] - 2 * reslab.riemann_zeta(4) / 81) < 1e-13
    assert m[0, 1] == 0


def test_zeta_functions():
    assert abs(reslab.riemann_zeta(2) - math.pi**2 / 6) < 1e-13
    assert abs(reslab.hurwitz_zeta(2, 0.5) - math.pi**2 / 2) < 1e-12


def test_discrete_system_and_classes():
    assert reslab.step(5.0, 1, 3.0) == pytest.approx((2.0, 1))
    classes = reslab.enumerate_classes(3.0, 1, 1)
    assert len(classes) == 2
    assert classes[0]["length"] == pytest.approx(2 * math.acosh(1.5))
    points = reslab.periodic_points(3.0, 1, 1)
    assert all(0 < p["multiplier"] < 1 for p in points)


def test_resonances():
    found, flagged = reslab.find_resonances(3.0, 0.55, 0.95, -0.01, 0.01)
    assert flagged == 0
    assert len(found) == 1
    assert found[0]["parity"] == "even"
    assert found[0]["s"].real == pytest.approx(reslab.delta_bisection(3.0), abs=1e-10)


def test_period_function_and_cocycle():
    pf = reslab.period_function_at_delta(3.0)
    assert pf.classify() == ("resonant-noncuspidal", "even")
    assert pf.slow_residual < 1e-6
    assert abs(pf.f1(0.3) - pf.f2(-0.3)) < 1e-10
    ext = pf.extended(20)
    assert abs(ext.f1(0.3) - pf.f1(0.3)) < 1e-12
    report = reslab.cocycle_report(pf, trials=20)
    assert max(report.values()) < 1e-8


def test_eisenstein_model():
    m = reslab.EisensteinModel(3.0, 0.9, degree=24)
    z = complex(0.4, 0.8)
    assert m(z)[0] == pytest.approx(m(z + 3.0)[0], abs=1e-8)
    assert m(z)[0] == pytest.approx(m(-1 / z)[0], abs=1e-8)
    _, _, rel = m.funnel_core_identity(1.0, 1.6, 1.3)
    assert rel < 1e-3


def test_verification_suite():
    report = reslab.run_suite("flow", 3.0)
    assert report["pass"]
    assert all(c["pass"] for c in report["checks"])


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        reslab.delta_bisection(1.9)
    with pytest.raises(ValueError):
        reslab.run_suite("nonsense")
    assert issubclass(reslab.DomainError, ValueError)
    assert issubclass(reslab.NumericalError, RuntimeError)
    assert cmath.isfinite(reslab.fredholm_det(complex(0.7, 2.0), 3.0))
