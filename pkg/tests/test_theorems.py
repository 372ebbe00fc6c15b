import math

import numpy as np
import pytest

from evolutes import catalog
from evolutes.catalog import FIXTURES, GeodesicCircle, lens, lens_corner_angle, realize
from evolutes.errors import InvalidInputError, NotStronglyConvexError
from evolutes.theorems import (
    Kind,
    check_ros,
    gauss_bonnet_rhs,
    isoperimetric_deficit,
    run_suite,
    verify_deficit,
    verify_evolute_gauss_bonnet,
    verify_gauss_bonnet_multiplicities,
    verify_gauss_bonnet_simple,
    verify_pointwise,
    verify_steiner,
    verify_tan_half_rho,
    verify_total_curvature,
)

from test_topology import polygon

ELLIPSE_LENGTH = 9.688448220547675


def test_circle_tan_half_rho_closed_form():
    C = realize(GeodesicCircle(1.0, math.pi / 3), 256)
    r = verify_tan_half_rho(C)
    # 2 pi sin(pi/3) tan(pi/6) = pi, and the cap area is pi
    assert r.lhs == pytest.approx(math.pi, abs=1e-13)
    assert r.rhs == pytest.approx(math.pi, abs=1e-13)
    assert r.passed and r.kind is Kind.IDENTITY


def test_circle_total_curvature_is_exact():
    for c in (-1.0, 0.0, 1.0):
        r = verify_total_curvature(realize(GeodesicCircle(c, 0.6), 256))
        assert r.lhs == pytest.approx(0, abs=1e-12) and r.rhs == 0


def test_ellipse_values(realized):
    E = realized("ellipse")
    r = verify_tan_half_rho(E)
    assert r.lhs == pytest.approx(59 * math.pi / 16, abs=1e-9)
    tc = verify_total_curvature(E)
    assert tc.lhs == pytest.approx(0, abs=1e-12) and tc.rhs == 0
    assert tc.passed
    ros = check_ros(E)
    assert ros.passed and ros.gap == pytest.approx(27 * math.pi / 16, abs=1e-9)
    reports = {x.name: x for x in verify_deficit(E)}
    assert len(reports) == 3
    delta = ELLIPSE_LENGTH**2 - 8 * math.pi**2
    assert reports["isoperimetric"].gap == pytest.approx(delta, abs=1e-9)
    assert delta == pytest.approx(14.909, abs=1e-3)
    assert reports["deficit-evolute-area"].gap > 50
    assert all(x.passed for x in reports.values())


def test_steiner_examples():
    r = verify_steiner(realize(GeodesicCircle(0.0, 1.0), 256), 0.5)
    assert r.lhs == pytest.approx(1.25 * math.pi, abs=1e-12)
    assert r.rhs == pytest.approx(1.25 * math.pi, abs=1e-12)
    r = verify_steiner(realize(GeodesicCircle(1.0, 0.6), 256), 0.3)
    assert r.lhs == pytest.approx(2 * math.pi * (math.cos(0.6) - math.cos(0.9)), abs=1e-12)
    closed = 2 * math.pi * math.sin(0.6) * math.sin(0.3) + 2 * math.sin(0.15) ** 2 * (
        2 * math.pi - 2 * math.pi * (1 - math.cos(0.6))
    )
    assert r.rhs == pytest.approx(closed, abs=1e-12)
    assert abs(r.residual) < 1e-9


def test_steiner_hyperbolic(realized):
    r = verify_steiner(realized("polar-hyperbolic"), 0.1)
    assert r.passed and abs(r.residual) < 1e-6


def test_deficit_circles_are_tight():
    for c in (-1.0, 1.0):
        reports = verify_deficit(realize(GeodesicCircle(c, 0.6), 256))
        assert len(reports) == 4
        for r in reports:
            assert r.passed and abs(r.gap) < 1e-9


def test_deficit_hyperbolic_fixture(realized):
    reports = verify_deficit(realized("polar-hyperbolic"))
    assert len(reports) == 4 and all(r.passed for r in reports)
    assert all(r.gap > 1e-3 for r in reports)


def test_isoperimetric_deficit_formula():
    # geodesic circle: L = 2 pi sn, F = 2 pi (1 - cn)/c
    for c in (-1.0, 1.0):
        rho = 0.7
        s = math.sin(rho) if c > 0 else math.sinh(rho)
        co = math.cos(rho) if c > 0 else math.cosh(rho)
        assert isoperimetric_deficit(2 * math.pi * s, 2 * math.pi * (1 - co) / c, c) == pytest.approx(0, abs=1e-12)


def test_gauss_bonnet_square():
    r = verify_gauss_bonnet_multiplicities(polygon([(0, 0), (1, 0), (1, 1), (0, 1)]))
    assert r.passed and r.lhs == 0 and abs(r.rhs) < 1e-12
    assert gauss_bonnet_rhs(0.0, 1.0, [math.pi / 2] * 4, 1, 1) == pytest.approx(0)


@pytest.mark.parametrize("c,radius,d", [(0.0, 1.0, 0.5), (1.0, 0.8, 0.4), (-1.0, 0.9, 0.3)])
def test_gauss_bonnet_lens(c, radius, d):
    path = realize(lens(c, radius, d), 64)
    r = verify_gauss_bonnet_multiplicities(path)
    assert r.passed and abs(r.residual) < 1e-10
    assert "N = 2" in r.notes and "nu = 1" in r.notes
    angle = lens_corner_angle(c, radius, d)
    assert f"interior angles = {angle:.12g}, {angle:.12g}" in r.notes


def test_gauss_bonnet_double_circle():
    C = realize(GeodesicCircle(1.0, 0.6, turns=2), 512)
    r = verify_gauss_bonnet_multiplicities(C.trace())
    assert r.passed and "nu = 2" in r.notes
    # lhs = 2 L k_g, rhs = -2 cap + 4 pi
    cap = 2 * math.pi * (1 - math.cos(0.6))
    assert r.lhs == pytest.approx(2 * 2 * math.pi * math.sin(0.6) / math.tan(0.6), abs=1e-12)
    assert r.rhs == pytest.approx(-2 * cap + 4 * math.pi, abs=1e-12)


def test_gauss_bonnet_simple(realized):
    for name in ("polar-sphere", "polar-hyperbolic", "ellipse"):
        assert verify_gauss_bonnet_simple(realized(name)).passed


def test_evolute_gauss_bonnet(realized):
    r = verify_evolute_gauss_bonnet(realized("ellipse"))
    assert r.passed and r.lhs == pytest.approx(2 * math.pi)
    assert "N = 4, nu = -1, N + 2 nu = 2" in r.notes
    r = verify_evolute_gauss_bonnet(realized("polar-sphere", 2048))
    assert r.passed and abs(r.residual) < 1e-6
    r = verify_evolute_gauss_bonnet(realize(GeodesicCircle(-1.0, 0.5), 128))
    assert r.passed and r.lhs == pytest.approx(2 * math.pi)


def test_report_pass_matches_residual(realized):
    reports = run_suite(realized("polar-sphere"), tol=1e-6)
    for r in reports:
        if r.kind is Kind.IDENTITY:
            assert r.passed == (abs(r.residual) <= r.tolerance)
        else:
            assert r.residual == max(0.0, r.lhs - r.rhs)
    tiny = run_suite(realize(FIXTURES["polar-sphere"], 32), ["total-curvature"], tol=1e-14)
    assert not tiny[0].passed


def test_preconditions(realized):
    with pytest.raises(NotStronglyConvexError):
        run_suite(realized("nonconvex-plane"))
    cw = realize(catalog.PlaneEllipse(2, 1, orientation=-1), 256)
    with pytest.raises(InvalidInputError):
        verify_total_curvature(cw)
    with pytest.raises(KeyError):
        run_suite(realized("ellipse"), ["nope"])


def test_pointwise_reports(realized):
    t = np.random.default_rng(3).uniform(0, 2 * np.pi, 16)
    reports = verify_pointwise(realized("polar-hyperbolic"), t)
    assert len(reports) == 13
    assert all(r.passed for r in reports)
