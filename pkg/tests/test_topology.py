import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evolutes import spaceform as sfm
from evolutes.catalog import GeodesicCircle, PolarFourier, realize
from evolutes.errors import BasePointError, DomainError
from evolutes.evolute import evolute
from evolutes.spaceform import SpaceForm
from evolutes.topology import (
    Arc,
    Chart,
    ChartKind,
    PathTrace,
    area_grid_oracle,
    area_with_multiplicities,
    interior_angles,
    make_chart,
    rotation_index,
    winding_number,
)

ASTROID_AREA = 27 * math.pi / 16  # (3 pi / 8) (a^2 - b^2)^2 / (a b) for a=2, b=1


def polygon(vertices, m=8):
    """Plane polygon as a chain of straight arcs."""
    vertices = [np.asarray(v, dtype=float) for v in vertices]
    arcs = []
    u = np.linspace(0, 1, m)
    w = np.full(m, 1.0 / (m - 1))
    w[[0, -1]] /= 2
    for a, b in zip(vertices, vertices[1:] + vertices[:1]):
        pts = a + u[:, None] * (b - a)
        vel = np.tile(b - a, (m, 1))
        arcs.append(Arc(pts, vel, w, vel / np.linalg.norm(b - a), kg=np.zeros(m)))
    return PathTrace(SpaceForm(0), tuple(arcs))


def test_winding_unit_circle():
    C = realize(GeodesicCircle(0.0, 1.0), 256).trace()
    assert winding_number(C, np.zeros(2)) == 1
    assert winding_number(C, np.array([5.0, 0.0])) == 0
    with pytest.raises(DomainError):
        winding_number(C, np.array([1.0, 0.0]))


def test_winding_inside_ellipse_evolute(realized):
    tr = evolute(realized("ellipse")).trace()
    assert winding_number(tr, np.array([0.0, 0.0])) == -1
    assert winding_number(tr, np.array([0.0, 3.5])) == 0


def test_chart_independence_of_winding(realized):
    rng = np.random.default_rng(1)
    for name in ("polar-sphere", "polar-hyperbolic"):
        tr = evolute(realized(name)).trace()
        sf = tr.sf
        a = make_chart(sf, sf.origin)
        b = make_chart(sf, sfm.geodesic(sf.origin, np.array([0, 1.0, 0]), 0.4, sf))
        probes = sfm.geodesic(
            np.broadcast_to(sf.origin, (100, 3)),
            np.stack([np.cos(th := rng.uniform(0, 2 * np.pi, 100)), np.sin(th), np.zeros(100)], 1),
            rng.uniform(0.0, 0.5, 100),
            sf,
        )
        assert np.array_equal(winding_number(tr, probes, a), winding_number(tr, probes, b))


def test_area_plane_and_cap():
    C = realize(GeodesicCircle(0.0, 1.0), 256).trace()
    assert area_with_multiplicities(C).value == pytest.approx(math.pi, abs=1e-13)
    cap = realize(GeodesicCircle(1.0, math.pi / 3), 256).trace()
    assert area_with_multiplicities(cap).value == pytest.approx(2 * math.pi * (1 - math.cos(math.pi / 3)), abs=1e-13)
    assert area_with_multiplicities(cap).value == pytest.approx(math.pi, abs=1e-13)
    hyp = realize(GeodesicCircle(-1.0, 0.6), 256).trace()
    assert area_with_multiplicities(hyp).value == pytest.approx(2 * math.pi * (math.cosh(0.6) - 1), abs=1e-13)


def test_plane_area_is_shoelace(realized):
    E = realized("ellipse")
    x, y = E.samples[:, 0], E.samples[:, 1]
    dx, dy = E.d1[:, 0], E.d1[:, 1]
    shoelace = 0.5 * np.sum(x * dy - y * dx) * 2 * np.pi / E.N
    assert area_with_multiplicities(E.trace()).value == pytest.approx(shoelace, abs=1e-13)


def test_astroid_area(realized):
    tr = evolute(realized("ellipse")).trace()
    line = area_with_multiplicities(tr)
    assert line.value == pytest.approx(-ASTROID_AREA, abs=1e-9)
    grid = area_grid_oracle(tr, 512)
    assert abs(grid.value - line.value) <= grid.estimated_error
    assert grid.estimated_error <= 0.01 * ASTROID_AREA


def test_grid_oracle_examples():
    C = realize(GeodesicCircle(0.0, 1.0), 1024).trace()
    g = area_grid_oracle(C, 512)
    assert g.value == pytest.approx(math.pi, abs=2e-3)
    cap = realize(GeodesicCircle(1.0, math.pi / 3), 1024).trace()
    g = area_grid_oracle(cap, 512)
    assert g.value == pytest.approx(math.pi, rel=0.01)
    assert abs(g.value - math.pi) <= g.estimated_error


def test_base_point_independence(realized):
    for name in ("polar-sphere", "polar-hyperbolic", "ellipse"):
        C = realized(name)
        sf = C.sf
        for tr in (C.trace(), evolute(C).trace()):
            a = area_with_multiplicities(tr, sf.origin).value
            if sf.c == 0:
                O2 = np.array([0.3, -0.2])
            else:
                O2 = sfm.geodesic(sf.origin, np.array([1.0, 0, 0]), 0.3, sf)
            assert a == pytest.approx(area_with_multiplicities(tr, O2).value, abs=1e-8)


def test_cut_locus_is_rejected():
    cap = realize(GeodesicCircle(1.0, 1.0), 256).trace()
    # the pole of the polar form about the south pole is the enclosed north pole
    with pytest.raises(BasePointError):
        area_with_multiplicities(cap, np.array([0, 0, -1.0]))
    far = sfm.geodesic(np.array([0, 0, 1.0]), np.array([1.0, 0, 0]), 3.0, SpaceForm(1.0))
    with pytest.raises(BasePointError):
        area_with_multiplicities(cap, far)


def test_small_curvature_limit():
    plane = area_with_multiplicities(realize(PolarFourier(0.0, 0.3, (0.0, 0.02)), 512).trace()).value
    for c in (1e-6, -1e-6):
        curved = area_with_multiplicities(realize(PolarFourier(c, 0.3, (0.0, 0.02)), 512).trace()).value
        assert curved == pytest.approx(plane, rel=1e-5)


def test_rotation_index():
    assert rotation_index(realize(GeodesicCircle(0.0, 1.0), 128).trace()) == 1
    assert rotation_index(realize(GeodesicCircle(1.0, 0.6, turns=2), 256).trace()) == 2
    assert rotation_index(polygon([(0, 0), (1, 0), (1, 1), (0, 1)])) == 1


def test_evolute_rotation_index_and_cusp_angles(realized):
    tr = evolute(realized("ellipse")).trace(split=True)
    nu = rotation_index(tr)
    assert nu == -1
    assert len(tr.corners) + 2 * nu == 2
    assert interior_angles(tr) == [0.0] * 4


def test_interior_angles_of_polygons():
    sq = polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert np.allclose(interior_angles(sq), math.pi / 2)
    # a vertex in the middle of a side is a fake corner
    fake = polygon([(0, 0), (0.5, 0), (1, 0), (1, 1), (0, 1)])
    assert interior_angles(fake)[0] == pytest.approx(math.pi)
    assert area_with_multiplicities(sq).value == pytest.approx(1.0)


@settings(max_examples=5, deadline=None)
@given(st.integers(0, 2**31))
def test_index_sign_structure(seed):
    rng = np.random.default_rng(seed)
    C = realize(PolarFourier(1.0, 0.6, (0.0, 0.05)), 512)
    sf = C.sf
    probes = sfm.geodesic(
        np.broadcast_to(sf.origin, (200, 3)),
        np.stack([np.cos(th := rng.uniform(0, 2 * np.pi, 200)), np.sin(th), np.zeros(200)], 1),
        rng.uniform(0.0, 1.0, 200),
        sf,
    )
    ind = winding_number(C.trace(), probes)
    ind_e = winding_number(evolute(C).trace(), probes)
    assert set(np.unique(ind)) <= {0, 1}
    assert np.all(ind_e <= 0)
    assert np.all(ind * ind_e <= 0)


def test_chart_round_trip():
    for c in (1.0, -1.0):
        sf = SpaceForm(c)
        ch = make_chart(sf)
        P = sfm.geodesic(sf.origin, np.array([0.6, 0.8, 0.0]), 0.7, sf)
        w = ch(P)
        expected = math.tan(0.35) if c > 0 else math.tanh(0.7)
        assert np.linalg.norm(w) == pytest.approx(expected)
        assert np.allclose(ch.inverse(w), P)
    with pytest.raises(DomainError):
        make_chart(SpaceForm(1.0), kind="klein")
    plane = Chart(ChartKind.IDENTITY, SpaceForm(0), np.zeros(2), np.array([0.0, 1.0]), np.array([-1.0, 0.0]))
    tr = realize(GeodesicCircle(0.0, 1.0), 64).trace()
    assert winding_number(tr, np.array([0.1, 0.2]), plane) == 1
