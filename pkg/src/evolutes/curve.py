"""Closed curves on a space form, represented by trigonometric interpolation.

A :class:`ClosedCurve` stores N samples at t_j = 2 pi j / N of the embedding
coordinates.  Derivatives are spectral, so frames and curvatures are accurate
to near machine precision on smooth (resolved) curves.

The normal ``n`` is the tangent rotated by +pi/2 in the surface orientation and
``k_g = <gamma'', n> / <gamma', gamma'>`` is signed accordingly.  For a
positively oriented strongly convex curve this is the unsigned geodesic
curvature and n points to the centre of curvature.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import spaceform as sfm
from . import spectral
from .errors import DegenerateCurveError, InvalidInputError, NotStronglyConvexError
from .spaceform import Model, SpaceForm
from .topology import Arc, PathTrace, centroid_base_point, make_chart, polyline_winding

log = logging.getLogger(__name__)

DEFAULT_N = 1024
RESOLVED_TAIL = 1e-10
FINE_FACTOR = 4


@dataclass(frozen=True)
class FrameJet:
    """Pointwise differential data of a curve (fields may be arrays)."""

    t: np.ndarray
    gamma: np.ndarray
    dgamma: np.ndarray
    ddgamma: np.ndarray
    speed: np.ndarray
    tangent: np.ndarray
    n: np.ndarray
    k_g: np.ndarray
    k: np.ndarray
    rho: np.ndarray
    drho_ds: np.ndarray


def frame(sf: SpaceForm, P, d1, d2):
    """Speed, unit tangent, oriented normal and signed k_g from raw derivatives."""
    speed = np.asarray(sfm.norm(d1, sf))
    T = d1 / speed[..., None]
    n = sfm.rotate90(P, T, sf)
    n = n / np.asarray(sfm.norm(n, sf))[..., None]
    kg = np.asarray(sfm.inner(d2, n, sf)) / speed**2
    return speed, T, n, kg


def ambient_curvature(sf: SpaceForm, kg):
    """k = sqrt(k_g^2 + c); NaN where k_g^2 + c <= 0."""
    q = np.asarray(kg, dtype=float) ** 2 + sf.c
    with np.errstate(invalid="ignore"):
        return np.where(q > 0, np.sqrt(np.where(q > 0, q, 1.0)), np.nan)


def radius_of_curvature(sf: SpaceForm, kg):
    """rho = arccot_c(k_g), NaN where the curve is not strongly convex."""
    kg = np.asarray(kg, dtype=float)
    ok = kg > sfm.convexity_threshold(sf.c)
    rho = np.full(kg.shape, np.nan)
    if np.any(ok):
        rho[ok] = sfm.arccot(sf.c, kg[ok])
    return rho


class ClosedCurve:
    """Periodic curve sampled uniformly in its parameter t in [0, 2 pi)."""

    def __init__(self, sf: SpaceForm, samples, orientation: int | None = None, source: str = ""):
        samples = np.array(samples, dtype=float)
        n = samples.shape[0]
        if n < 16 or n & (n - 1):
            raise InvalidInputError(f"sample count must be a power of two >= 16, got {n}")
        if samples.shape[1:] != (sf.dim,):
            raise InvalidInputError(f"{sf} expects samples of shape (N, {sf.dim})")
        if sf.model is Model.EMBEDDED:
            samples = sfm.project_to_surface(samples, sf)
        samples.setflags(write=False)
        self.sf = sf
        self.samples = samples
        self.source = source
        self._check_regular()
        # curvature needs two derivatives, so its spectrum is the stricter test
        self.tail_ratio = max(spectral.tail_ratio(samples), spectral.tail_ratio(self.kg))
        self.resolved = self.tail_ratio < RESOLVED_TAIL
        if not self.resolved:
            log.warning("curve spectrum not resolved (tail ratio %.2e)", self.tail_ratio)
        self.orientation = self._detect_orientation() if orientation is None else int(orientation)

    @property
    def N(self) -> int:
        return self.samples.shape[0]

    @property
    def params(self) -> np.ndarray:
        return spectral.grid(self.N)

    def __repr__(self):
        return f"ClosedCurve({self.sf}, N={self.N}, source={self.source!r})"

    # -- construction checks ------------------------------------------------

    def _check_regular(self):
        fine = spectral.refine(self.samples, FINE_FACTOR, order=1)
        speed = np.asarray(sfm.norm(fine, self.sf))
        scale = float(np.max(speed))
        if not scale > 0 or float(np.min(speed)) <= 1e-8 * scale:
            raise DegenerateCurveError("curve has zero speed somewhere")

    def _detect_orientation(self) -> int:
        chart = make_chart(self.sf, self.base_point)
        poly = chart(self.samples)
        try:
            w = float(polyline_winding(poly, chart(self.base_point)[None])[0])
        except Exception:
            w = 0.0
        if round(w) != 0:
            return 1 if w > 0 else -1
        x, y = poly[:, 0], poly[:, 1]
        shoelace = 0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
        return 1 if shoelace >= 0 else -1

    @cached_property
    def base_point(self) -> np.ndarray:
        return centroid_base_point(self.samples, self.sf)

    # -- spectral data on the sample grid -------------------------------------

    @cached_property
    def interpolant(self) -> spectral.Interpolant:
        return spectral.Interpolant(self.samples)

    @cached_property
    def d1(self) -> np.ndarray:
        return spectral.derivative(self.samples, 1)

    @cached_property
    def d2(self) -> np.ndarray:
        return spectral.derivative(self.samples, 2)

    @cached_property
    def _frame(self):
        return frame(self.sf, self.samples, self.d1, self.d2)

    @property
    def speed(self) -> np.ndarray:
        return self._frame[0]

    @property
    def tangent(self) -> np.ndarray:
        return self._frame[1]

    @property
    def normal(self) -> np.ndarray:
        return self._frame[2]

    @property
    def kg(self) -> np.ndarray:
        return self._frame[3]

    @cached_property
    def k(self) -> np.ndarray:
        return ambient_curvature(self.sf, self.kg)

    @cached_property
    def rho(self) -> np.ndarray:
        return radius_of_curvature(self.sf, self.kg)

    @cached_property
    def rho_interpolant(self) -> spectral.Interpolant:
        return spectral.Interpolant(self.rho)

    @cached_property
    def drho_dt(self) -> np.ndarray:
        return spectral.derivative(self.rho, 1)

    @property
    def drho_ds(self) -> np.ndarray:
        return self.drho_dt / self.speed

    # -- quadrature -------------------------------------------------------------

    def integrate(self, f) -> float:
        """Integral of f ds for per-sample values f (trapezoidal, spectral)."""
        return float(np.sum(np.asarray(f) * self.speed) * 2.0 * np.pi / self.N)

    def trace(self) -> PathTrace:
        w = np.full(self.N, 2.0 * np.pi / self.N)
        arc = Arc(self.samples, self.d1, w, self.tangent, kg=self.kg, periodic=True)
        return PathTrace(self.sf, (arc,), source=self.source or "curve")

    def resampled(self, n: int) -> "ClosedCurve":
        """Same interpolant on a grid of n points (band-limited resampling)."""
        pts = self.interpolant(spectral.grid(n))
        return ClosedCurve(self.sf, pts, orientation=self.orientation, source=self.source)


def from_samples(points, sf: SpaceForm, source: str = "") -> ClosedCurve:
    """Build a ClosedCurve from raw samples (projected onto the surface)."""
    return ClosedCurve(sf, points, source=source)


def jet(curve: ClosedCurve, t) -> FrameJet:
    """Frame, curvatures and radius of curvature at parameter(s) t."""
    t = np.asarray(t, dtype=float)
    sf = curve.sf
    I = curve.interpolant
    P = I(t)
    if sf.model is Model.EMBEDDED:
        P = sfm.project_to_surface(P, sf)
    d1 = I(t, 1)
    d2 = I(t, 2)
    d1 = sfm.tangent_part(P, d1, sf)
    speed, T, n, kg = frame(sf, P, d1, d2)
    k = ambient_curvature(sf, kg)
    rho = radius_of_curvature(sf, kg)
    drho_ds = curve.rho_interpolant(t, 1) / speed
    return FrameJet(t, P, d1, d2, speed, T, n, kg, k, rho, drho_ds)


def length(curve: ClosedCurve) -> float:
    return curve.integrate(1.0)


@dataclass(frozen=True)
class ArclengthTable:
    """Monotone map between the curve parameter t and arclength s."""

    t: np.ndarray
    s: np.ndarray
    length: float
    _speed: spectral.Interpolant

    def s_of_t(self, t):
        return self._speed.integral(t)

    def t_of_s(self, s):
        s = np.asarray(s, dtype=float)
        t = np.interp(s, np.append(self.s, self.length), np.append(self.t, 2 * np.pi))
        for _ in range(4):  # Newton on the spectral antiderivative
            t = t - (self.s_of_t(t) - s) / self._speed(t)
        return t


def arclength_table(curve: ClosedCurve) -> ArclengthTable:
    speed = spectral.Interpolant(curve.speed)
    t = curve.params
    s = speed.integral(t)
    L = float(speed.integral(2 * np.pi))
    if np.any(np.diff(s) <= 0):
        raise DegenerateCurveError("arclength is not strictly increasing")
    return ArclengthTable(t, s, L, speed)


def fine_kg(curve: ClosedCurve, factor: int = FINE_FACTOR) -> np.ndarray:
    P = spectral.refine(curve.samples, factor)
    d1 = spectral.refine(curve.samples, factor, order=1)
    d2 = spectral.refine(curve.samples, factor, order=2)
    return frame(curve.sf, P, d1, d2)[3]


def strong_convexity_margin(curve: ClosedCurve) -> float:
    """min k_g - threshold over a fine grid; positive iff strongly convex."""
    return float(np.min(fine_kg(curve)) - sfm.convexity_threshold(curve.sf.c))


def require_strongly_convex(curve: ClosedCurve):
    m = strong_convexity_margin(curve)
    if not m > 0:
        raise NotStronglyConvexError(f"curve is not strongly convex (margin {m:.6g})")


def parallel_curve(curve: ClosedCurve, r: float) -> ClosedCurve:
    """Outward parallel curve at distance r (along -n)."""
    if r < 0:
        raise InvalidInputError("parallel distance must be non-negative")
    require_strongly_convex(curve)
    if curve.sf.c > 0 and np.max(curve.rho) + r >= math.pi / (2 * math.sqrt(curve.sf.c)):
        raise InvalidInputError("parallel curve would leave the range 0 < sqrt(c) rho < pi/2")
    pts = sfm.geodesic(curve.samples, -curve.normal, np.full(curve.N, float(r)), curve.sf, check=False)
    out = ClosedCurve(curve.sf, pts, orientation=curve.orientation, source=f"parallel({curve.source}, {r})")
    return out
