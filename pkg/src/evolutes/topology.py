"""Charts, closed paths, winding numbers, rotation indices and signed areas.

Areas with multiplicities are computed two independent ways:

* :func:`area_with_multiplicities` integrates the 1-form
  ``eta = 2 sn_c(r/2)^2 dtheta`` (geodesic polar coordinates about a base
  point O) along the path.  Since ``d eta = dS``, Green's formula with
  multiplicities turns the line integral into the area weighted by the index.
  In embedding coordinates the form is ``eta_P(v) = det(O^, P, v) / (1 + cn r)``
  with ``O^ = sqrt|c| O``, which is free of any argument branch.
* :func:`area_grid_oracle` sums index times area element over a chart grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import spaceform as sfm
from .errors import BasePointError, DomainError, InvalidInputError, ResolutionError
from .spaceform import Model, SpaceForm

WINDING_RESIDUAL = 0.05
# Minimum of 1 + cn(r) allowed along a path for the polar area form (c > 0).
CUT_LOCUS_MARGIN = 1e-2


class ChartKind(Enum):
    IDENTITY = "identity"
    STEREOGRAPHIC = "stereographic"
    KLEIN = "klein"


@dataclass(frozen=True)
class Chart:
    """Orientation-preserving chart centred at ``base`` with frame (e1, e2).

    Stereographic projection is taken from the antipode of ``base``; the
    Beltrami-Klein chart is the central projection of the hyperboloid.  Both are
    normalised so that |w| = R tan(r/2R) and |w| = R tanh(r/R) respectively,
    where r is the distance to ``base``.
    """

    kind: ChartKind
    sf: SpaceForm
    base: np.ndarray
    e1: np.ndarray
    e2: np.ndarray

    def _parts(self, P):
        P = np.asarray(P, dtype=float)
        if self.kind is ChartKind.IDENTITY:
            d = P - self.base
            return d @ self.e1, d @ self.e2, np.ones(P.shape[:-1])
        b1 = np.asarray(sfm.inner(P, self.e1, self.sf))
        b2 = np.asarray(sfm.inner(P, self.e2, self.sf))
        cosr = self.sf.c * np.asarray(sfm.inner(P, self.base, self.sf))
        denom = 1.0 + cosr if self.kind is ChartKind.STEREOGRAPHIC else cosr
        return b1, b2, denom

    def __call__(self, P):
        b1, b2, denom = self._parts(P)
        if np.any(denom <= 1e-12):
            raise DomainError(f"point outside the {self.kind.value} chart domain")
        return np.stack([b1 / denom, b2 / denom], axis=-1)

    def contains(self, P, margin: float = 1e-6):
        return np.asarray(self._parts(P)[2]) > margin

    def differential(self, P, v):
        """Push a tangent vector v at P forward to chart coordinates."""
        v = np.asarray(v, dtype=float)
        if self.kind is ChartKind.IDENTITY:
            return np.stack([v @ self.e1, v @ self.e2], axis=-1)
        b1, b2, denom = self._parts(P)
        db1 = np.asarray(sfm.inner(v, self.e1, self.sf))
        db2 = np.asarray(sfm.inner(v, self.e2, self.sf))
        dden = self.sf.c * np.asarray(sfm.inner(v, self.base, self.sf))
        return np.stack(
            [(db1 * denom - b1 * dden) / denom**2, (db2 * denom - b2 * dden) / denom**2],
            axis=-1,
        )

    def inverse(self, w):
        w = np.asarray(w, dtype=float)
        if self.kind is ChartKind.IDENTITY:
            return self.base + w[..., :1] * self.e1 + w[..., 1:] * self.e2
        R = self.sf.radius
        wn = np.sqrt(np.sum(w * w, axis=-1))
        if self.kind is ChartKind.STEREOGRAPHIC:
            r = 2.0 * R * np.arctan(wn / R)
        else:
            if np.any(wn >= R):
                raise DomainError("point outside the Klein disk")
            r = R * np.arctanh(wn / R)
        safe = np.where(wn > 0, wn, 1.0)
        u = (w[..., :1] * self.e1 + w[..., 1:] * self.e2) / safe[..., None]
        return sfm.geodesic(self.base, u, r, self.sf, check=False)

    def area_element(self, w):
        """Ratio dS / (dw1 dw2) at chart point w."""
        w = np.asarray(w, dtype=float)
        q = self.sf.c * np.sum(w * w, axis=-1)
        if self.kind is ChartKind.STEREOGRAPHIC:
            return 4.0 / (1.0 + q) ** 2
        if self.kind is ChartKind.KLEIN:
            # grid cells past the disk boundary carry no area
            inside = 1.0 + q > 0
            return np.where(inside, np.maximum(1.0 + q, 1e-300), np.inf) ** -1.5 * inside
        return np.ones(w.shape[:-1])

    def boundary_radius(self) -> float | None:
        """Radius of the chart's natural boundary circle, if any."""
        if self.kind is ChartKind.KLEIN:
            return self.sf.radius
        if self.kind is ChartKind.STEREOGRAPHIC:
            # image of the great circle at distance pi R / 2 from the base
            return self.sf.radius
        return None


def make_chart(sf: SpaceForm, base=None, kind: ChartKind | str | None = None) -> Chart:
    base = sf.origin if base is None else np.asarray(base, dtype=float)
    if kind is None or kind == "auto":
        kind = {0: ChartKind.IDENTITY, 1: ChartKind.STEREOGRAPHIC, -1: ChartKind.KLEIN}[
            int(np.sign(sf.c))
        ]
    kind = ChartKind(kind)
    allowed = {
        Model.PLANE: {ChartKind.IDENTITY},
        Model.EMBEDDED: {ChartKind.STEREOGRAPHIC} if sf.c > 0 else {ChartKind.KLEIN},
    }[sf.model]
    if kind not in allowed:
        raise DomainError(f"{kind.value} chart is not available on {sf}")
    if sf.model is Model.EMBEDDED:
        sfm.check_on_surface(base, sf)
    e1, e2 = sfm.tangent_frame(base, sf)
    return Chart(kind, sf, base, e1, e2)


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class Arc:
    """One smooth piece of a closed path, sampled at quadrature nodes.

    ``velocities`` are derivatives with respect to the arc's own parameter and
    ``weights`` integrate over that parameter.  ``tangents`` are unit tangent
    directions; at the end nodes of a non-periodic arc they are the one-sided
    limits, which stay meaningful where the velocity vanishes (cusps).
    """

    points: np.ndarray
    velocities: np.ndarray
    weights: np.ndarray
    tangents: np.ndarray
    kg: np.ndarray | None = None
    periodic: bool = False


@dataclass(frozen=True)
class Corner:
    index: int
    point: np.ndarray
    left: np.ndarray
    right: np.ndarray
    # chart-independent neighbours used to orient cusps
    before: np.ndarray
    after: np.ndarray


@dataclass(frozen=True)
class PathTrace:
    """A closed piecewise-smooth path on a surface.

    Either a single periodic arc, or a cyclic chain of arcs in which every arc
    ends where the next begins.  Junctions between arcs are corners.
    """

    sf: SpaceForm
    arcs: tuple
    source: str = ""
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        arcs = tuple(self.arcs)
        object.__setattr__(self, "arcs", arcs)
        if not arcs:
            raise InvalidInputError("a path needs at least one arc")
        if any(a.periodic for a in arcs) and len(arcs) > 1:
            raise InvalidInputError("a periodic arc must be the whole path")
        if not arcs[0].periodic:
            scale = max(float(np.max(np.abs(a.points))) for a in arcs)
            for a, b in zip(arcs, arcs[1:] + arcs[:1]):
                if np.max(np.abs(a.points[-1] - b.points[0])) > 1e-8 * max(scale, 1.0):
                    raise InvalidInputError("consecutive arcs do not join up")

    def __repr__(self):
        return f"PathTrace({self.sf}, arcs={len(self.arcs)}, points={len(self.polyline)}, source={self.source!r})"

    @property
    def periodic(self) -> bool:
        return self.arcs[0].periodic

    @property
    def polyline(self) -> np.ndarray:
        """Closed polyline vertices (the closing edge back to vertex 0 is implicit)."""
        if "polyline" not in self._cache:
            if self.periodic:
                pts = self.arcs[0].points
            else:
                pts = np.concatenate([a.points[:-1] for a in self.arcs])
            self._cache["polyline"] = pts
        return self._cache["polyline"]

    @property
    def tangents(self) -> np.ndarray:
        if self.periodic:
            return self.arcs[0].tangents
        return np.concatenate([a.tangents[:-1] for a in self.arcs])

    @property
    def corners(self) -> list:
        if self.periodic:
            return []
        out = []
        idx = 0
        n = len(self.arcs)
        for i, a in enumerate(self.arcs):
            b = self.arcs[(i + 1) % n]
            idx += len(a.points) - 1
            ka = max(1, len(a.points) // 20)
            kb = max(1, len(b.points) // 20)
            out.append(
                Corner(
                    index=idx % len(self.polyline),
                    point=a.points[-1],
                    left=a.tangents[-1],
                    right=b.tangents[0],
                    before=a.points[-1 - ka],
                    after=b.points[kb],
                )
            )
        return out

    @property
    def corner_indices(self) -> list:
        return [c.index for c in self.corners]

    def chart_points(self, chart: Chart) -> np.ndarray:
        return chart(self.polyline)

    def default_base_point(self) -> np.ndarray:
        return centroid_base_point(self.polyline, self.sf)

    def geodesic_curvature_integral(self) -> float:
        """Sum over arcs of the integral of signed k_g ds."""
        total = 0.0
        for a in self.arcs:
            if a.kg is None:
                raise InvalidInputError("arc carries no geodesic curvature samples")
            speed = np.asarray(sfm.norm(a.velocities, self.sf))
            total += float(np.sum(a.kg * speed * a.weights))
        return total

    def length(self) -> float:
        return float(
            sum(np.sum(np.asarray(sfm.norm(a.velocities, self.sf)) * a.weights) for a in self.arcs)
        )


def centroid_base_point(points, sf: SpaceForm) -> np.ndarray:
    """Euclidean centroid of the points, projected back onto the surface."""
    m = np.mean(np.asarray(points, dtype=float), axis=0)
    if sf.model is Model.PLANE:
        return m
    try:
        return sfm.project_to_surface(m, sf)
    except Exception:
        return np.asarray(points[0], dtype=float)


# ---------------------------------------------------------------------------
# winding numbers


def _segment_distance(poly: np.ndarray, probes: np.ndarray) -> np.ndarray:
    a = poly
    b = np.roll(poly, -1, axis=0)
    ab = b - a
    L2 = np.maximum(np.sum(ab * ab, axis=1), 1e-300)
    d = probes[:, None, :] - a[None, :, :]
    t = np.clip(np.sum(d * ab[None], axis=2) / L2[None], 0.0, 1.0)
    q = d - t[..., None] * ab[None]
    return np.sqrt(np.min(np.sum(q * q, axis=2), axis=1))


def polyline_winding(poly, probes, tol: float = 1e-12) -> np.ndarray:
    """Winding numbers (unrounded) of a closed planar polyline about probe points.

    Argument accumulation: the wrapped angle increments of (vertex - P) are
    summed around the polygon.
    """
    poly = np.asarray(poly, dtype=float)
    probes = np.atleast_2d(np.asarray(probes, dtype=float))
    scale = float(np.max(np.abs(poly))) or 1.0
    out = np.empty(len(probes))
    for lo in range(0, len(probes), 256):
        P = probes[lo : lo + 256]
        if np.any(_segment_distance(poly, P) <= tol * scale):
            raise DomainError("probe point lies on the path")
        d = poly[None, :, :] - P[:, None, :]
        ang = np.arctan2(d[..., 1], d[..., 0])
        inc = np.diff(np.concatenate([ang, ang[:, :1]], axis=1), axis=1)
        inc = (inc + np.pi) % (2.0 * np.pi) - np.pi
        out[lo : lo + 256] = inc.sum(axis=1) / (2.0 * np.pi)
    return out


def _round_winding(w: np.ndarray) -> np.ndarray:
    r = np.rint(w)
    if np.any(np.abs(w - r) >= WINDING_RESIDUAL):
        raise ResolutionError(f"winding residual {np.max(np.abs(w - r)):.3g} too large")
    return r.astype(int)


def winding_number(path: PathTrace, P, chart: Chart | None = None):
    """Index of the path about surface point(s) P, computed in an oriented chart."""
    P = np.asarray(P, dtype=float)
    if chart is None:
        chart = make_chart(path.sf, path.default_base_point())
    poly = path.chart_points(chart)
    w = _round_winding(polyline_winding(poly, chart(P.reshape(-1, P.shape[-1]))))
    return int(w[0]) if P.ndim == 1 else w.reshape(P.shape[:-1])


def crossing_winding_grid(poly, xs, ys) -> np.ndarray:
    """Winding numbers at all grid points (xs[i], ys[j]) by signed ray crossings.

    Returns an array of shape (len(ys), len(xs)).  A horizontal ray is cast to
    the right of each point; upward edges count +1, downward edges -1.
    """
    poly = np.asarray(poly, dtype=float)
    a = poly
    b = np.roll(poly, -1, axis=0)
    y0, y1 = a[:, 1], b[:, 1]
    sign = np.where(y1 > y0, 1, -1)
    lo = np.searchsorted(ys, np.minimum(y0, y1), side="left")
    hi = np.searchsorted(ys, np.maximum(y0, y1), side="left")
    count = np.maximum(hi - lo, 0)
    edge = np.repeat(np.arange(len(a)), count)
    row = np.arange(count.sum()) - np.repeat(np.cumsum(count) - count, count) + lo[edge]
    yy = ys[row]
    frac = (yy - y0[edge]) / (y1[edge] - y0[edge])
    xint = a[edge, 0] + frac * (b[edge, 0] - a[edge, 0])
    col = np.searchsorted(xs, xint, side="left")
    acc = np.zeros((len(ys), len(xs) + 1))
    np.add.at(acc, (row, np.zeros_like(row)), sign[edge])
    np.add.at(acc, (row, col), -sign[edge])
    return np.cumsum(acc, axis=1)[:, :-1].round().astype(int)


# ---------------------------------------------------------------------------
# areas


@dataclass(frozen=True)
class AreaResult:
    value: float
    method: str
    base_point: np.ndarray | None
    samples: int
    estimated_error: float
    resolution: int | None = None

    def __float__(self):
        return self.value


def _polar_form(sf: SpaceForm, O, P, v):
    """eta_P(v) = 2 sn(r/2)^2 dtheta(v) with r, theta polar coordinates about O."""
    if sf.model is Model.PLANE:
        d = P - O
        return 0.5 * (d[..., 0] * v[..., 1] - d[..., 1] * v[..., 0])
    Oh = sfm.unit_normal(O, sf)
    det = np.einsum("...i,...i->...", np.broadcast_to(Oh, P.shape), np.cross(P, v))
    cosr = sf.c * np.asarray(sfm.inner(P, O, sf))
    return det / (1.0 + cosr)


def _cut_locus_ok(sf: SpaceForm, O, pts) -> float:
    if sf.c <= 0:
        return math.inf
    return float(np.min(1.0 + sf.c * np.asarray(sfm.inner(pts, O, sf))))


def _check_theta_unwrap(sf: SpaceForm, O, pts: np.ndarray):
    """Reject samplings where the polar angle jumps by more than the geometry allows."""
    _, w, wn = sfm.polar_parts(O, pts, sf)
    e1, e2 = sfm.tangent_frame(O, sf)
    theta = np.arctan2(np.asarray(sfm.inner(w, e2, sf)), np.asarray(sfm.inner(w, e1, sf)))
    nxt = np.roll(np.arange(len(pts)), -1)
    jump = np.abs((theta[nxt] - theta + np.pi) % (2 * np.pi) - np.pi)
    chord = np.sqrt(np.sum((pts[nxt] - pts) ** 2, axis=-1))
    near = np.minimum(wn, wn[nxt])
    bad = (jump > 0.9 * np.pi) & (near > 2.0 * chord)
    if np.any(bad):
        raise ResolutionError("polar angle jumps by more than pi between samples")


def _antipode_enclosed(path: PathTrace, O) -> bool:
    """Whether the pole of the polar form (-O) is enclosed by the path.

    Indices on the sphere are taken in the default chart of the path, whose
    point at infinity is the antipode of the default base point.  The polar
    form about O only reproduces those indices when -O has index zero.
    """
    if path.sf.c <= 0:
        return False
    ref = path.default_base_point()
    if np.allclose(O, ref, atol=1e-12):
        return False
    try:
        return winding_number(path, -np.asarray(O, dtype=float)) != 0
    except DomainError:
        return True


def _choose_base_point(path: PathTrace, O):
    pts = path.polyline
    if O is not None:
        O = np.asarray(O, dtype=float)
        if _cut_locus_ok(path.sf, O, pts) < CUT_LOCUS_MARGIN or _antipode_enclosed(path, O):
            raise BasePointError(
                "path reaches or encloses the cut locus of the base point; re-centre nearer the path"
            )
        return O
    candidates = [path.default_base_point()] + [pts[i] for i in range(0, len(pts), max(1, len(pts) // 8))]
    best = max(candidates, key=lambda q: _cut_locus_ok(path.sf, q, pts))
    if _cut_locus_ok(path.sf, best, pts) < CUT_LOCUS_MARGIN or _antipode_enclosed(path, best):
        raise BasePointError("no base point keeps the whole path inside its cut locus")
    return best


def area_with_multiplicities(path: PathTrace, O=None) -> AreaResult:
    """Signed area weighted by the index, via the polar Green line integral."""
    sf = path.sf
    O = _choose_base_point(path, O)
    if sf.model is Model.EMBEDDED:
        sfm.check_on_surface(O, sf)
    _check_theta_unwrap(sf, O, path.polyline)
    total = 0.0
    err = 0.0
    for a in path.arcs:
        f = _polar_form(sf, O, a.points, a.velocities) * a.weights
        total += float(np.sum(f))
        if a.periodic and len(f) % 2 == 0:
            err += abs(float(np.sum(f)) - 2.0 * float(np.sum(f[::2])))
    scale = max(abs(total), 1.0)
    return AreaResult(
        value=total,
        method="LineIntegral",
        base_point=O,
        samples=sum(len(a.points) for a in path.arcs),
        estimated_error=err + 1e-13 * scale,
    )


def _grid_sum(chart: Chart, poly: np.ndarray, lo, hi, n: int):
    xs = lo[0] + (np.arange(n) + 0.5) * (hi[0] - lo[0]) / n
    ys = lo[1] + (np.arange(n) + 0.5) * (hi[1] - lo[1]) / n
    hx, hy = (hi[0] - lo[0]) / n, (hi[1] - lo[1]) / n
    ind = crossing_winding_grid(poly, xs, ys)
    X, Y = np.meshgrid(xs, ys)
    weight = chart.area_element(np.stack([X, Y], axis=-1)) * hx * hy
    return xs, ys, hx, hy, ind, weight


def _touched_cells(poly, lo, hx, hy, n):
    """Cells crossed by the polyline (edges densified below half a cell)."""
    a = poly
    b = np.roll(poly, -1, axis=0)
    seg = np.sqrt(((b - a) / [hx, hy]) ** 2).sum(axis=1)
    steps = np.maximum(2, np.ceil(4 * seg).astype(int))
    e = np.repeat(np.arange(len(a)), steps)
    s = (np.arange(steps.sum()) - np.repeat(np.cumsum(steps) - steps, steps)) / steps[e]
    p = a[e] + s[:, None] * (b[e] - a[e])
    ix = np.clip(((p[:, 0] - lo[0]) / hx).astype(int), 0, n - 1)
    iy = np.clip(((p[:, 1] - lo[1]) / hy).astype(int), 0, n - 1)
    mask = np.zeros((n, n), dtype=bool)
    mask[iy, ix] = True
    return mask


def area_grid_oracle(path: PathTrace, resolution: int = 512, chart: Chart | None = None) -> AreaResult:
    """Brute-force area with multiplicities: sum of Ind * dS over a chart grid.

    Cells crossed by the path are split into 2x2 sub-cells evaluated at their
    centres.  Sub-cells that the path still crosses may be misclassified; half
    their weight is charged to the error estimate, together with the change
    under halving the resolution.
    """
    if chart is None:
        chart = make_chart(path.sf, path.default_base_point())
    poly = path.chart_points(chart)
    lo = poly.min(axis=0)
    hi = poly.max(axis=0)
    pad = 0.02 * float(np.max(hi - lo)) + 1e-12
    lo, hi = lo - pad, hi + pad
    if chart.kind is ChartKind.KLEIN:
        R = path.sf.radius
        lo = np.maximum(lo, -R * (1 - 1e-12))
        hi = np.minimum(hi, R * (1 - 1e-12))

    def estimate(n):
        _, _, hx, hy, ind, weight = _grid_sum(chart, poly, lo, hi, n)
        touched = _touched_cells(poly, lo, hx, hy, n)
        value = float(np.sum(ind[~touched] * weight[~touched]))
        # sub-cell centres of the touched cells are the cells of the doubled grid
        _, _, _, _, ind2, weight2 = _grid_sum(chart, poly, lo, hi, 2 * n)
        inside = np.repeat(np.repeat(touched, 2, axis=0), 2, axis=1)
        value += float(np.sum(ind2[inside] * weight2[inside]))
        near = inside & _touched_cells(poly, lo, hx / 2, hy / 2, 2 * n)
        indmax = max(int(np.max(np.abs(ind))), 1)
        doubtful = 0.5 * float(np.sum(weight2[near])) * indmax
        return value, doubtful

    value, skipped = estimate(resolution)
    coarse, _ = estimate(max(resolution // 2, 8))
    return AreaResult(
        value=value,
        method="GridOracle",
        base_point=chart.base,
        samples=len(poly),
        estimated_error=skipped + abs(value - coarse),
        resolution=resolution,
    )


# ---------------------------------------------------------------------------
# tangent turning


def _angle(u):
    return np.arctan2(u[..., 1], u[..., 0])


def _wrap(x):
    return (x + np.pi) % (2.0 * np.pi) - np.pi


CUSP_TOL = 1e-6


@dataclass(frozen=True)
class Turning:
    """Decomposition of the total tangent turning of a path in a chart."""

    smooth: float
    jumps: tuple
    residual: float

    @property
    def total(self) -> float:
        return self.smooth + sum(self.jumps)

    @property
    def index(self) -> int:
        return int(round(self.total / (2.0 * np.pi)))


def tangent_turning(path: PathTrace, chart: Chart | None = None) -> Turning:
    if chart is None:
        chart = make_chart(path.sf, path.default_base_point())
    smooth = 0.0
    for a in path.arcs:
        ang = _angle(chart.differential(a.points, a.tangents))
        if a.periodic:
            ang = np.concatenate([ang, ang[:1]])
        inc = _wrap(np.diff(ang))
        if np.any(np.abs(inc) > 0.5 * np.pi):
            raise ResolutionError("tangent turns by more than pi/2 between samples")
        smooth += float(inc.sum())
    jumps = []
    for c in path.corners:
        tl = chart.differential(c.point, c.left)
        tr = chart.differential(c.point, c.right)
        phi = math.atan2(tl[0] * tr[1] - tl[1] * tr[0], tl[0] * tr[0] + tl[1] * tr[1])
        if abs(phi) > np.pi - CUSP_TOL:
            # cusp: the tangent reverses; the turn follows the side the path bends to
            chord = chart(c.after) - chart(c.before)
            side = tr[0] * chord[1] - tr[1] * chord[0]
            phi = -np.pi if side > 0 else np.pi
        jumps.append(phi)
    total = smooth + sum(jumps)
    residual = abs(total / (2 * np.pi) - round(total / (2 * np.pi)))
    return Turning(smooth=smooth, jumps=tuple(jumps), residual=residual)


def rotation_index(path: PathTrace, chart: Chart | None = None) -> int:
    """Number of turns of the tangent, smooth variation plus corner jumps."""
    t = tangent_turning(path, chart)
    if t.residual >= WINDING_RESIDUAL:
        raise ResolutionError(f"rotation index residual {t.residual:.3g} too large")
    return t.index


def interior_angles(path: PathTrace, orientation: int | None = None) -> list:
    """Interior angle at every corner, measured on the surface.

    With phi the turn from the left to the right tangent in (-pi, pi], the
    interior angle is pi - orientation * phi; reversed tangents (cusps) give 0.
    ``orientation`` defaults to the sign of the rotation index.
    """
    sf = path.sf
    if orientation is None:
        orientation = 1 if rotation_index(path) >= 0 else -1
    out = []
    for c in path.corners:
        nl = sfm.norm(c.left, sf)
        nr = sfm.norm(c.right, sf)
        if not (nl > 0 and nr > 0):
            raise InvalidInputError("undefined one-sided tangent at a corner")
        tl, tr = c.left / nl, c.right / nr
        s = float(sfm.inner(sfm.rotate90(c.point, tl, sf), tr, sf))
        co = float(sfm.inner(tl, tr, sf))
        phi = math.atan2(s, co)
        if abs(phi) > np.pi - CUSP_TOL:
            out.append(0.0)
        else:
            out.append(np.pi - orientation * phi)
    return out
