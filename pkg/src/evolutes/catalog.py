"""Curve fixtures and the JSON file formats for curves and reports.

A curve file is a JSON object::

    {"format": "evolutes-curve/1", "kind": "PolarFourier", "c": 1.0,
     "model": "embedded", "fields": {...}}

Floats are written with ``repr``, the shortest decimal string that reads back
to the same double, so save followed by load is bit-exact.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import spaceform as sfm
from .curve import ClosedCurve, frame
from .errors import CurveFileError, InvalidInputError
from .spaceform import Model, SpaceForm
from .spectral import grid
from .topology import Arc, PathTrace

CURVE_FORMAT = "evolutes-curve/1"
REPORT_FORMAT = "evolutes-report/1"


def _point(sf: SpaceForm, p):
    if p is None:
        return sf.origin
    p = np.asarray(p, dtype=float)
    if p.shape != (sf.dim,):
        raise InvalidInputError(f"point {p.tolist()} does not have {sf.dim} coordinates")
    if sf.model is Model.EMBEDDED:
        sfm.check_on_surface(p, sf)
    return p


def _orient(o: int) -> int:
    if o not in (1, -1):
        raise InvalidInputError("orientation must be +1 or -1")
    return o


@dataclass(frozen=True)
class GeodesicCircle:
    """Geodesic circle of radius ``radius`` about ``center``, traversed ``turns`` times."""

    c: float
    radius: float
    center: tuple | None = None
    orientation: int = 1
    turns: int = 1

    def validate(self):
        sf = SpaceForm(self.c)
        _point(sf, self.center)
        _orient(self.orientation)
        if not self.radius > 0:
            raise InvalidInputError("radius must be positive")
        if self.c > 0 and math.sqrt(self.c) * self.radius >= math.pi / 2:
            raise InvalidInputError("radius must satisfy sqrt(c) radius < pi/2")
        if int(self.turns) != self.turns or self.turns < 1:
            raise InvalidInputError("turns must be a positive integer")


@dataclass(frozen=True)
class PlaneEllipse:
    a: float
    b: float
    orientation: int = 1

    @property
    def c(self) -> float:
        return 0.0

    def validate(self):
        _orient(self.orientation)
        if not (self.a > 0 and self.b > 0):
            raise InvalidInputError("semi-axes must be positive")


@dataclass(frozen=True)
class PolarFourier:
    """Curve r = r(theta) in geodesic polar coordinates about ``pole``.

    r(theta) = r0 + sum_m (cos_coeffs[m-1] cos m theta + sin_coeffs[m-1] sin m theta).
    The polar frame at the pole is the standard tangent frame of the package.
    """

    c: float
    r0: float
    cos_coeffs: tuple = ()
    sin_coeffs: tuple = ()
    pole: tuple | None = None
    orientation: int = 1

    def radius(self, theta):
        theta = np.asarray(theta, dtype=float)
        r = np.full(theta.shape, float(self.r0))
        for m, a in enumerate(self.cos_coeffs, start=1):
            r = r + a * np.cos(m * theta)
        for m, b in enumerate(self.sin_coeffs, start=1):
            r = r + b * np.sin(m * theta)
        return r

    def validate(self):
        sf = SpaceForm(self.c)
        _point(sf, self.pole)
        _orient(self.orientation)
        r = self.radius(grid(4096))
        if not np.min(r) > 0:
            raise InvalidInputError("polar radius must stay positive")
        if self.c > 0 and np.max(r) >= math.pi / (2 * math.sqrt(self.c)):
            raise InvalidInputError("polar radius must stay below pi / (2 sqrt(c))")


@dataclass(frozen=True)
class CircleArc:
    """Arc of the geodesic circle about ``center`` through ``start``.

    ``sweep`` is the signed angle swept at the centre (positive is
    counter-clockwise in the surface orientation).
    """

    center: tuple
    start: tuple
    sweep: float


@dataclass(frozen=True)
class PiecewiseArcs:
    c: float
    arcs: tuple

    def validate(self):
        if not self.arcs:
            raise InvalidInputError("at least one arc is required")
        sf = SpaceForm(self.c)
        ends = [_arc_points(sf, a, np.array([0.0, 1.0]))[0] for a in self.arcs]
        for i, (a, (p0, p1)) in enumerate(zip(self.arcs, ends)):
            nxt = ends[(i + 1) % len(ends)][0]
            if np.max(np.abs(p1 - nxt)) > 1e-9:
                raise InvalidInputError(f"arc {i} does not end where arc {(i + 1) % len(ends)} starts")


@dataclass(frozen=True)
class RawSamples:
    c: float
    points: tuple
    orientation: int | None = None

    def validate(self):
        sf = SpaceForm(self.c)
        p = np.asarray(self.points, dtype=float)
        if p.ndim != 2 or p.shape[1] != sf.dim:
            raise InvalidInputError(f"points must be an (N, {sf.dim}) array")


SPEC_KINDS = {cls.__name__: cls for cls in (GeodesicCircle, PlaneEllipse, PolarFourier, PiecewiseArcs, RawSamples)}


# ---------------------------------------------------------------------------
# realization


def _frame_at(sf: SpaceForm, p):
    return sfm.tangent_frame(p, sf)


def _polar_points(sf: SpaceForm, O, r, ang):
    e1, e2 = _frame_at(sf, O)
    u = np.cos(ang)[:, None] * e1 + np.sin(ang)[:, None] * e2
    if sf.model is Model.PLANE:
        return O + r[:, None] * u
    return sfm.cn(sf.c, r)[:, None] * O + sfm.sn(sf.c, r)[:, None] * u


def _arc_points(sf: SpaceForm, arc: CircleArc, u):
    """Points, first and second derivatives in the arc parameter u in [0, 1]."""
    C = _point(sf, arc.center)
    S = _point(sf, arc.start)
    rho, d0 = sfm.log_map(C, S, sf)
    d1 = sfm.rotate90(C, d0, sf)
    phi = arc.sweep * np.asarray(u, dtype=float)
    cos, sin = np.cos(phi)[:, None], np.sin(phi)[:, None]
    s = float(sfm.sn(sf.c, rho))
    base = C * float(sfm.cn(sf.c, rho)) if sf.model is Model.EMBEDDED else C
    P = base + s * (cos * d0 + sin * d1)
    V = arc.sweep * s * (-sin * d0 + cos * d1)
    A = -(arc.sweep**2) * s * (cos * d0 + sin * d1)
    return P, V, A


def _realize_arcs(spec: PiecewiseArcs, n: int) -> PathTrace:
    sf = SpaceForm(spec.c)
    x, w = np.polynomial.legendre.leggauss(n)
    x = np.concatenate([[-1.0], x, [1.0]])
    w = np.concatenate([[0.0], w, [0.0]]) / 2.0
    u = (x + 1.0) / 2.0
    arcs = []
    for a in spec.arcs:
        P, V, A = _arc_points(sf, a, u)
        _, T, _, kg = frame(sf, P, V, A)
        arcs.append(Arc(P, V, w, T, kg=kg))
    # snap the joins so rounding in the endpoints cannot break the chain
    for i in range(len(arcs)):
        arcs[i].points[-1] = arcs[(i + 1) % len(arcs)].points[0]
    return PathTrace(sf, tuple(arcs), source="piecewise-arcs")


def realize(spec, n: int = 1024):
    """Sample a curve spec: a ClosedCurve, or a PathTrace for piecewise arcs.

    For ``PiecewiseArcs`` n is the number of Gauss-Legendre nodes per arc.
    Strong convexity is not assumed here; it is measured by the consumers.
    """
    spec.validate()
    if isinstance(spec, PiecewiseArcs):
        return _realize_arcs(spec, n)
    t = grid(n)
    if isinstance(spec, RawSamples):
        sf = SpaceForm(spec.c)
        pts = np.asarray(spec.points, dtype=float)
        curve = ClosedCurve(sf, pts, orientation=spec.orientation, source="raw-samples")
        return curve if len(pts) == n else curve.resampled(n)
    if isinstance(spec, PlaneEllipse):
        sf = SpaceForm(0.0)
        s = spec.orientation * t
        pts = np.stack([spec.a * np.cos(s), spec.b * np.sin(s)], axis=1)
        return ClosedCurve(sf, pts, orientation=spec.orientation, source=f"ellipse({spec.a:g},{spec.b:g})")
    sf = SpaceForm(spec.c)
    if isinstance(spec, GeodesicCircle):
        O = _point(sf, spec.center)
        ang = spec.orientation * spec.turns * t
        pts = _polar_points(sf, O, np.full(n, float(spec.radius)), ang)
        label = f"circle(c={spec.c:g},rho={spec.radius:g}" + (f",turns={spec.turns}" if spec.turns != 1 else "") + ")"
        return ClosedCurve(sf, pts, orientation=spec.orientation, source=label)
    if isinstance(spec, PolarFourier):
        O = _point(sf, spec.pole)
        ang = spec.orientation * t
        pts = _polar_points(sf, O, spec.radius(ang), ang)
        return ClosedCurve(sf, pts, orientation=spec.orientation, source=f"polar(c={spec.c:g})")
    raise InvalidInputError(f"unknown curve spec {type(spec).__name__}")


# ---------------------------------------------------------------------------
# builders


def lens(c: float, radius: float, half_separation: float) -> PiecewiseArcs:
    """Intersection of two geodesic disks of equal radius whose centres are
    2 * half_separation apart, as a positively oriented two-corner path."""
    sf = SpaceForm(c)
    if not 0 < half_separation < radius:
        raise InvalidInputError("need 0 < half_separation < radius")
    O = sf.origin
    e1, e2 = sfm.tangent_frame(O, sf)
    C1 = sfm.geodesic(O, -e1, half_separation, sf)
    C2 = sfm.geodesic(O, e1, half_separation, sf)
    # corners lie on the perpendicular bisector; cn(rho) = cn(d) cn(h)
    if c == 0:
        h = math.sqrt(radius**2 - half_separation**2)
    else:
        ch = float(sfm.cn(c, radius)) / float(sfm.cn(c, half_separation))
        h = math.acos(ch) / math.sqrt(c) if c > 0 else math.acosh(ch) / math.sqrt(-c)
    top = sfm.geodesic(O, e2, h, sf)
    bottom = sfm.geodesic(O, -e2, h, sf)
    # each boundary arc turns counter-clockwise about the far centre
    sweep = lens_center_angle(c, radius, half_separation)
    arc1 = CircleArc(tuple(C1), tuple(bottom), sweep)
    arc2 = CircleArc(tuple(C2), tuple(top), sweep)
    return PiecewiseArcs(c, (arc1, arc2))


def lens_center_angle(c: float, radius: float, half_separation: float) -> float:
    """Angle at either centre between the rays to the two corners."""
    if c == 0:
        return 2.0 * math.acos(half_separation / radius)
    ch = float(sfm.cn(c, radius)) / float(sfm.cn(c, half_separation))
    h = math.acos(ch) / math.sqrt(c) if c > 0 else math.acosh(ch) / math.sqrt(-c)
    # right triangle (centre, midpoint, corner): sn(h) = sn(radius) sin(angle/2)
    return 2.0 * math.asin(float(sfm.sn(c, h)) / float(sfm.sn(c, radius)))


def lens_corner_angle(c: float, radius: float, half_separation: float) -> float:
    """Interior angle at a lens corner, from the law of cosines of the space form.

    The triangle (centre 1, corner, centre 2) has sides radius, radius and
    2 * half_separation; the interior angle is pi minus its angle at the corner.
    """
    if c == 0:
        return 2.0 * math.acos(half_separation / radius)
    cos_x = (float(sfm.cn(c, 2 * half_separation)) - float(sfm.cn(c, radius)) ** 2) / (
        c * float(sfm.sn(c, radius)) ** 2
    )
    return math.pi - math.acos(cos_x)


FIXTURES = {
    "circle-plane": GeodesicCircle(0.0, 1.0),
    "circle-sphere": GeodesicCircle(1.0, math.pi / 3),
    "circle-hyperbolic": GeodesicCircle(-1.0, 1.0),
    "ellipse": PlaneEllipse(2.0, 1.0),
    "polar-sphere": PolarFourier(1.0, 0.6, (0.0, 0.05)),
    "polar-hyperbolic": PolarFourier(-1.0, 0.6, (0.0, 0.05)),
    "nonconvex-plane": PolarFourier(0.0, 1.0, (0.0, 0.0, 0.4)),
    "double-circle-sphere": GeodesicCircle(1.0, 0.6, turns=2),
    "lens-plane": lens(0.0, 1.0, 0.5),
    "lens-sphere": lens(1.0, 0.8, 0.4),
}


# ---------------------------------------------------------------------------
# files


def _jsonable(v):
    if isinstance(v, CircleArc):
        return {"center": _jsonable(v.center), "start": _jsonable(v.start), "sweep": float(v.sweep)}
    if isinstance(v, (tuple, list, np.ndarray)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.integer, int)):
        return int(v)
    return v


def spec_to_dict(spec) -> dict:
    c = float(spec.c)
    body = {f.name: _jsonable(getattr(spec, f.name)) for f in fields(spec) if f.name != "c"}
    return {
        "format": CURVE_FORMAT,
        "kind": type(spec).__name__,
        "c": c,
        "model": "plane" if c == 0 else "embedded",
        "fields": body,
    }


def dumps_spec(spec) -> str:
    return json.dumps(spec_to_dict(spec), indent=1, sort_keys=True, allow_nan=False) + "\n"


def spec_digest(spec) -> str:
    return "sha256:" + hashlib.sha256(dumps_spec(spec).encode()).hexdigest()


def _tuplify(v):
    return tuple(_tuplify(x) for x in v) if isinstance(v, list) else v


def _number(v, where, origin="<data>"):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise CurveFileError(f"{origin}: field {where!r}: expected a finite number, got {v!r}")
    return float(v)


def spec_from_dict(d: dict, origin: str = "<data>"):
    if not isinstance(d, dict):
        raise CurveFileError(f"{origin}: top level must be an object")
    if d.get("format") != CURVE_FORMAT:
        raise CurveFileError(f"{origin}: field 'format': expected {CURVE_FORMAT!r}, got {d.get('format')!r}")
    kind = d.get("kind")
    if kind not in SPEC_KINDS:
        raise CurveFileError(f"{origin}: field 'kind': unknown curve kind {kind!r}")
    c = _number(d.get("c"), "c", origin)
    model = d.get("model")
    if model != ("plane" if c == 0 else "embedded"):
        raise CurveFileError(f"{origin}: field 'model': {model!r} does not match c = {c!r}")
    body = d.get("fields")
    if not isinstance(body, dict):
        raise CurveFileError(f"{origin}: field 'fields' must be an object")
    cls = SPEC_KINDS[kind]
    names = {f.name for f in fields(cls)} - {"c"}
    extra = set(body) - names
    if extra:
        raise CurveFileError(f"{origin}: unknown field(s) {sorted(extra)} for {kind}")
    kwargs = {}
    for k, v in body.items():
        if k == "arcs":
            try:
                v = tuple(
                    CircleArc(_tuplify(a["center"]), _tuplify(a["start"]), _number(a["sweep"], f"arcs[{i}].sweep", origin))
                    for i, a in enumerate(v)
                )
            except (KeyError, TypeError) as e:
                raise CurveFileError(f"{origin}: field 'arcs': malformed arc ({e})") from None
        elif isinstance(v, list):
            flat = np.asarray(v, dtype=object).ravel() if v else []
            for x in flat:
                _number(x, k, origin)
            v = _tuplify(v)
        elif v is not None and k != "orientation" and k != "turns":
            v = _number(v, k, origin)
        kwargs[k] = v
    if kind != "PlaneEllipse":
        kwargs["c"] = c
    try:
        spec = cls(**kwargs)
        spec.validate()
    except TypeError as e:
        raise CurveFileError(f"{origin}: {kind}: {e}") from None
    except InvalidInputError as e:
        raise CurveFileError(f"{origin}: {kind}: {e}") from None
    return spec


def loads_spec(text: str, origin: str = "<string>"):
    try:
        d = json.loads(text, parse_constant=lambda s: _reject_constant(s, origin))
    except json.JSONDecodeError as e:
        raise CurveFileError(f"{origin}:{e.lineno}:{e.colno}: {e.msg}") from None
    return spec_from_dict(d, origin)


def _reject_constant(s, origin):
    raise CurveFileError(f"{origin}: non-finite number {s} is not allowed")


def save_curve(spec, path) -> str:
    """Write a curve spec; returns its content digest."""
    text = dumps_spec(spec)
    Path(path).write_text(text)
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


def load_curve(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise CurveFileError(f"{path}: cannot read ({e.strerror})") from None
    return loads_spec(text, str(path))


def save_curve_samples(curve: ClosedCurve, path) -> str:
    """Store a realized curve as raw samples."""
    spec = RawSamples(curve.sf.c, tuple(map(tuple, curve.samples.tolist())), curve.orientation)
    return save_curve(spec, path)


# ---------------------------------------------------------------------------
# reports


def dumps_reports(reports) -> str:
    payload = {"format": REPORT_FORMAT, "reports": [r.to_dict() for r in reports]}
    try:
        return json.dumps(payload, indent=1, allow_nan=False) + "\n"
    except ValueError:
        raise CurveFileError("report contains a non-finite number") from None


def save_reports(reports, path) -> None:
    Path(path).write_text(dumps_reports(reports))


def load_reports(path) -> list:
    from .theorems import Kind, TheoremReport

    path = Path(path)
    try:
        d = json.loads(path.read_text(), parse_constant=lambda s: _reject_constant(s, str(path)))
    except json.JSONDecodeError as e:
        raise CurveFileError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(d, dict) or d.get("format") != REPORT_FORMAT:
        raise CurveFileError(f"{path}: field 'format': expected {REPORT_FORMAT!r}")
    out = []
    names = {f.name for f in fields(TheoremReport)}
    for i, r in enumerate(d.get("reports", [])):
        missing = names - set(r) - {"oracle_error", "gap", "notes"}
        if missing:
            raise CurveFileError(f"{path}: reports[{i}]: missing field(s) {sorted(missing)}")
        r = dict(r)
        r["kind"] = Kind(r["kind"])
        r["notes"] = tuple(r.get("notes", ()))
        out.append(TheoremReport(**r))
    return out
