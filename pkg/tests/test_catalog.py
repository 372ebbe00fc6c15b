import json
import math
from pathlib import Path

import numpy as np
import pytest

from evolutes import catalog
from evolutes.catalog import (
    FIXTURES,
    GeodesicCircle,
    PiecewiseArcs,
    PlaneEllipse,
    PolarFourier,
    RawSamples,
    load_curve,
    load_reports,
    realize,
    save_curve,
    save_reports,
)
from evolutes.curve import jet, strong_convexity_margin
from evolutes.errors import CurveFileError, InvalidInputError
from evolutes import spaceform as sfm
from evolutes.theorems import run_suite
from evolutes.topology import PathTrace

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def test_geodesic_circle_curvature():
    C = realize(GeodesicCircle(1.0, math.pi / 3), 256)
    assert np.allclose(jet(C, np.linspace(0, 6, 7)).k_g, 1 / math.tan(math.pi / 3), rtol=1e-13)


def test_polar_fixture_is_strongly_convex():
    C = realize(PolarFourier(1.0, 0.6, (0.0, 0.05)), 2048)
    assert strong_convexity_margin(C) > 0


def test_ellipse_matches_parametrization():
    E = realize(PlaneEllipse(2.0, 1.0), 512)
    t = 2 * np.pi * np.arange(512) / 512
    assert np.allclose(E.samples, np.stack([2 * np.cos(t), np.sin(t)], 1), atol=1e-12)


def test_spec_invariants():
    with pytest.raises(InvalidInputError):
        PolarFourier(0.0, 0.1, (0.2,)).validate()
    with pytest.raises(InvalidInputError):
        PolarFourier(1.0, 1.6).validate()
    with pytest.raises(InvalidInputError):
        GeodesicCircle(1.0, 2.0).validate()
    arcs = FIXTURES["lens-plane"].arcs
    broken = PiecewiseArcs(0.0, (arcs[0], catalog.CircleArc(arcs[1].center, arcs[1].start, arcs[1].sweep * 0.9)))
    with pytest.raises(InvalidInputError):
        broken.validate()


def test_piecewise_realization_has_corners():
    path = realize(FIXTURES["lens-sphere"], 32)
    assert isinstance(path, PathTrace)
    assert len(path.corners) == 2


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_round_trip(tmp_path, name):
    spec = FIXTURES[name]
    f = tmp_path / "c.json"
    digest = save_curve(spec, f)
    back = load_curve(f)
    assert back == spec
    assert catalog.spec_digest(back) == digest


def test_raw_samples_round_trip(tmp_path):
    C = realize(FIXTURES["polar-hyperbolic"], 1024)
    f = tmp_path / "raw.json"
    catalog.save_curve_samples(C, f)
    spec = load_curve(f)
    assert isinstance(spec, RawSamples)
    assert np.array_equal(np.asarray(spec.points), C.samples)
    # re-projection onto the surface may move a coordinate by one ulp
    again = realize(spec, 1024)
    assert np.allclose(again.samples, C.samples, rtol=0, atol=1e-15)


def test_shipped_fixture_files_match_builtins():
    for name, spec in FIXTURES.items():
        f = FIXTURE_DIR / f"{name}.json"
        assert load_curve(f) == spec
        assert f.read_text() == catalog.dumps_spec(spec)


@pytest.mark.parametrize(
    "text,fragment",
    [
        ('{"format": ', ":1:12"),
        ('{"format": "nope"}', "'format'"),
        ('{"format": "evolutes-curve/1", "kind": "Blob", "c": 0, "model": "plane", "fields": {}}', "'kind'"),
        ('{"format": "evolutes-curve/1", "kind": "PlaneEllipse", "c": 0, "model": "embedded", "fields": {}}', "'model'"),
        ('{"format": "evolutes-curve/1", "kind": "PlaneEllipse", "c": 0, "model": "plane", "fields": {"a": "x", "b": 1}}', "'a'"),
        ('{"format": "evolutes-curve/1", "kind": "PlaneEllipse", "c": 0, "model": "plane", "fields": {"a": 1, "b": NaN}}', "non-finite"),
        ('{"format": "evolutes-curve/1", "kind": "PlaneEllipse", "c": 0, "model": "plane", "fields": {"a": 1, "q": 1}}', "unknown field"),
        ('{"format": "evolutes-curve/1", "kind": "PlaneEllipse", "c": 0, "model": "plane", "fields": {"a": -1, "b": 1}}', "positive"),
    ],
)
def test_malformed_files(text, fragment):
    with pytest.raises(CurveFileError) as e:
        catalog.loads_spec(text, "f.json")
    assert fragment in str(e.value)


def test_reports_round_trip(tmp_path, realized):
    reports = run_suite(realized("polar-sphere", 256), ["total-curvature", "ros"])
    f = tmp_path / "r.json"
    save_reports(reports, f)
    assert load_reports(f) == reports
    payload = json.loads(f.read_text())
    assert {"name", "lhs", "rhs", "residual", "tolerance", "passed", "inputs_digest"} <= set(payload["reports"][0])


def test_report_with_nan_is_rejected(tmp_path, realized):
    import dataclasses

    r = run_suite(realized("polar-sphere", 256), ["total-curvature"])[0]
    with pytest.raises(CurveFileError):
        save_reports([dataclasses.replace(r, lhs=float("nan"))], tmp_path / "x.json")


def test_lens_builder_corners_match_closed_form():
    for c, rho, d in [(0.0, 1.0, 0.5), (1.0, 0.8, 0.4), (-1.0, 0.9, 0.3)]:
        spec = catalog.lens(c, rho, d)
        sf = sfm.SpaceForm(c)
        for a in spec.arcs:
            assert sfm.distance(np.asarray(a.center), np.asarray(a.start), sf) == pytest.approx(rho)
