"""Constant-curvature surfaces and their generalized trigonometry.

A surface of curvature ``c`` is represented as

* the Euclidean plane (points are 2-vectors) when ``c == 0``;
* the sphere ``<u, u> = 1/c`` in Euclidean 3-space when ``c > 0``;
* the upper sheet of ``<u, u> = 1/c`` in Lorentz 3-space (metric
  ``diag(1, 1, -1)``) when ``c < 0``.

All functions are vectorized: point/vector arguments carry coordinates on the
last axis and may have arbitrary leading batch dimensions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError, InvalidInputError, NotOnSurfaceError

# Below this value of |c| x^2 the generalized sine/cosine use their Taylor series.
SERIES_CUTOFF = 1e-8
# Relative tolerance for "lies on the surface" / "is tangent" checks.
SURFACE_TOL = 1e-9


class Model(Enum):
    PLANE = "plane"
    EMBEDDED = "embedded"


@dataclass(frozen=True)
class SpaceForm:
    """The simply connected surface of constant curvature ``c``."""

    c: float

    def __post_init__(self):
        if not math.isfinite(self.c):
            raise InvalidInputError(f"curvature must be finite, got {self.c!r}")
        object.__setattr__(self, "c", float(self.c))

    @property
    def epsilon(self) -> int:
        return 1 if self.c >= 0 else -1

    @property
    def K(self) -> float:
        return abs(self.c)

    @property
    def model(self) -> Model:
        return Model.PLANE if self.c == 0 else Model.EMBEDDED

    @property
    def dim(self) -> int:
        return 2 if self.c == 0 else 3

    @property
    def radius(self) -> float:
        """Radius 1/sqrt|c| of the model sphere (inf for the plane)."""
        return math.inf if self.c == 0 else 1.0 / math.sqrt(self.K)

    @property
    def metric(self) -> np.ndarray:
        if self.c == 0:
            return np.ones(2)
        return np.array([1.0, 1.0, float(self.epsilon)])

    @property
    def origin(self) -> np.ndarray:
        """A canonical point: the origin of the plane or the 'north pole'."""
        if self.c == 0:
            return np.zeros(2)
        return np.array([0.0, 0.0, self.radius])

    def __str__(self):
        return f"X_c(c={self.c:g})"


# ---------------------------------------------------------------------------
# generalized trigonometry


def _as_float(x):
    return float(x) if np.ndim(x) == 0 else x


def sn(c: float, x):
    """Generalized sine: sin(sqrt(c) x)/sqrt(c), x, or sinh(sqrt(-c) x)/sqrt(-c)."""
    x = np.asarray(x, dtype=float)
    cx2 = c * x * x
    series = x * (1.0 - cx2 / 6.0 * (1.0 - cx2 / 20.0))
    if c > 0:
        s = math.sqrt(c)
        main = np.sin(s * x) / s
    elif c < 0:
        s = math.sqrt(-c)
        main = np.sinh(s * x) / s
    else:
        main = x
    return _as_float(np.where(np.abs(cx2) < SERIES_CUTOFF, series, main))


def cn(c: float, x):
    """Generalized cosine, the derivative of :func:`sn`."""
    x = np.asarray(x, dtype=float)
    cx2 = c * x * x
    series = 1.0 - cx2 / 2.0 * (1.0 - cx2 / 12.0)
    if c > 0:
        main = np.cos(math.sqrt(c) * x)
    elif c < 0:
        main = np.cosh(math.sqrt(-c) * x)
    else:
        main = np.ones_like(x)
    return _as_float(np.where(np.abs(cx2) < SERIES_CUTOFF, series, main))


def tanc(c: float, x):
    return _as_float(np.asarray(sn(c, x)) / np.asarray(cn(c, x)))


def cotc(c: float, x):
    s = np.asarray(sn(c, x))
    scale = np.maximum(1.0, np.abs(np.asarray(x, dtype=float)))
    if np.any(np.abs(s) <= 1e-14 * scale):
        raise DomainError(f"cot_c has a pole at x={x!r} (c={c})")
    return _as_float(np.asarray(cn(c, x)) / s)


def convexity_threshold(c: float) -> float:
    """Lower bound that k_g must exceed for strong convexity."""
    return math.sqrt(-c) if c < 0 else 0.0


def arccot(c: float, k):
    """Radius of curvature: the rho with cot_c(rho) = k.

    For c > 0 the branch 0 < sqrt(c) rho < pi/2 is returned.
    """
    k = np.asarray(k, dtype=float)
    lo = convexity_threshold(c)
    if np.any(~(k > lo)):
        raise DomainError(f"cot_c^-1 needs k > {lo:g} for c={c:g}; got min {np.min(k)!r}")
    if c > 0:
        s = math.sqrt(c)
        rho = np.arctan2(s, k) / s
    elif c < 0:
        s = math.sqrt(-c)
        rho = np.arctanh(s / k) / s
    else:
        rho = 1.0 / k
    return _as_float(rho)


# ---------------------------------------------------------------------------
# linear algebra with the signature metric


def inner(u, v, sf: SpaceForm):
    """Scalar product u1 v1 + u2 v2 + eps u3 v3 (Euclidean dot in the plane)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return _as_float(np.sum(u * v * sf.metric, axis=-1))


def crossm(u, v, sf: SpaceForm):
    """Metric-adjoint cross product: the X with <X, w> = det(u, v, w) for all w."""
    if sf.model is not Model.EMBEDDED:
        raise InvalidInputError("crossm is only defined on the embedded model")
    p = np.cross(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    return p * sf.metric


def unit_normal(P, sf: SpaceForm):
    """Unit vector sqrt|c| P orthogonal to the surface (norm squared = eps)."""
    return np.asarray(P, dtype=float) * math.sqrt(sf.K)


def rotate90(P, v, sf: SpaceForm):
    """Rotate tangent vector v at P by +pi/2 in the surface orientation."""
    v = np.asarray(v, dtype=float)
    if sf.model is Model.PLANE:
        return np.stack([-v[..., 1], v[..., 0]], axis=-1)
    return crossm(unit_normal(P, sf), v, sf)


def norm(v, sf: SpaceForm):
    """Length of a tangent (spacelike) vector."""
    return _as_float(np.sqrt(np.maximum(np.asarray(inner(v, v, sf)), 0.0)))


def tangent_frame(P, sf: SpaceForm, hint=(1.0, 0.0, 0.0)):
    """Positively oriented orthonormal frame (e1, e2) of the tangent plane at P."""
    P = np.asarray(P, dtype=float)
    if sf.model is Model.PLANE:
        e1 = np.array([1.0, 0.0])
        return e1, rotate90(P, e1, sf)
    a = np.asarray(hint, dtype=float)
    for cand in (a, np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0])):
        v = tangent_part(P, cand, sf)
        nv = norm(v, sf)
        if nv > 1e-3 * float(np.linalg.norm(cand)):
            e1 = v / nv
            break
    return e1, rotate90(P, e1, sf)


def tangent_part(P, v, sf: SpaceForm):
    """Orthogonal projection of v onto the tangent plane at P."""
    v = np.asarray(v, dtype=float)
    if sf.model is Model.PLANE:
        return v
    P = np.asarray(P, dtype=float)
    coef = sf.c * np.asarray(inner(v, P, sf))
    return v - coef[..., None] * P


# ---------------------------------------------------------------------------
# surface membership, geodesics, exp/log


def on_surface_residual(P, sf: SpaceForm):
    """Relative deviation |c <P,P> - 1| (zero in the plane)."""
    if sf.model is Model.PLANE:
        return _as_float(np.zeros(np.shape(P)[:-1]))
    P = np.asarray(P, dtype=float)
    return _as_float(np.abs(sf.c * np.asarray(inner(P, P, sf)) - 1.0))


def check_on_surface(P, sf: SpaceForm, tol: float = SURFACE_TOL):
    P = np.asarray(P, dtype=float)
    if P.shape[-1] != sf.dim:
        raise InvalidInputError(f"{sf} expects {sf.dim}-vectors, got shape {P.shape}")
    if sf.model is Model.PLANE:
        return
    if np.max(on_surface_residual(P, sf)) > tol:
        raise InvalidInputError("point(s) not on the surface")
    if sf.c < 0 and np.any(P[..., 2] <= 0):
        raise InvalidInputError("point(s) not on the upper sheet")


def project_to_surface(P, sf: SpaceForm):
    """Radially rescale raw vectors so that <P,P> = 1/c."""
    P = np.asarray(P, dtype=float)
    if sf.model is Model.PLANE:
        raise InvalidInputError("projection is only meaningful for c != 0")
    if P.shape[-1] != 3:
        raise InvalidInputError(f"expected 3-vectors, got shape {P.shape}")
    q = sf.c * np.asarray(inner(P, P, sf))
    if np.any(~(q > 0)):
        raise NotOnSurfaceError("<P,P> does not have the sign of 1/c")
    if sf.c < 0 and np.any(P[..., 2] <= 0):
        raise NotOnSurfaceError("point(s) below the upper sheet")
    return P / np.sqrt(q)[..., None]


def geodesic(x, y, t, sf: SpaceForm, check: bool = True):
    """Point at arclength t along the geodesic from x with unit direction y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    t = np.asarray(t, dtype=float)
    if check:
        check_on_surface(x, sf)
        if np.max(np.abs(np.asarray(inner(y, y, sf)) - 1.0)) > SURFACE_TOL:
            raise InvalidInputError("direction is not a unit vector")
        if sf.model is Model.EMBEDDED:
            scale = sf.radius
            if np.max(np.abs(np.asarray(inner(x, y, sf)))) > SURFACE_TOL * scale:
                raise InvalidInputError("direction is not tangent at x")
    if sf.model is Model.PLANE:
        return x + t[..., None] * y
    return np.asarray(cn(sf.c, t))[..., None] * x + np.asarray(sn(sf.c, t))[..., None] * y


def _distance_from_parts(sf: SpaceForm, a, b):
    """Distance r with cn(r) = sqrt|c| a and sn(r) = b (a, b as in log_map)."""
    if sf.c > 0:
        R = sf.radius
        return R * np.arctan2(b / R, a / R)
    R = sf.radius
    return R * np.arcsinh(b / R)


def polar_parts(O, P, sf: SpaceForm):
    """Decompose P = cn(r) O + w with w tangent at O; returns (cos part, w, |w|).

    ``|w| = sn(r)``. Works batched in P and never divides, so coincident points
    are allowed (|w| = 0).
    """
    O = np.asarray(O, dtype=float)
    P = np.asarray(P, dtype=float)
    if sf.model is Model.PLANE:
        w = P - O
        return np.ones(P.shape[:-1]), w, np.sqrt(np.sum(w * w, axis=-1))
    cosr = sf.c * np.asarray(inner(P, O, sf))
    w = P - cosr[..., None] * O
    return cosr, w, np.sqrt(np.maximum(np.asarray(inner(w, w, sf)), 0.0))


def distance(O, P, sf: SpaceForm):
    """Geodesic distance between points (batched in P)."""
    if sf.model is Model.PLANE:
        d = np.asarray(P, dtype=float) - np.asarray(O, dtype=float)
        return _as_float(np.sqrt(np.sum(d * d, axis=-1)))
    cosr, _, wn = polar_parts(O, P, sf)
    R = sf.radius
    return _as_float(_distance_from_parts(sf, cosr * R, wn))


def log_map(O, P, sf: SpaceForm):
    """Inverse of :func:`geodesic`: returns (distance, unit direction at O)."""
    O = np.asarray(O, dtype=float)
    P = np.asarray(P, dtype=float)
    check_on_surface(O, sf)
    check_on_surface(P, sf)
    cosr, w, wn = polar_parts(O, P, sf)
    scale = 1.0 if sf.c == 0 else sf.radius
    if np.any(wn <= 1e-14 * scale):
        if sf.c > 0 and np.any(cosr < 0):
            raise DomainError("log_map undefined at the antipode of the base point")
        raise DomainError("log_map undefined for coincident points")
    r = distance(O, P, sf)
    return r, w / np.asarray(wn)[..., None]
