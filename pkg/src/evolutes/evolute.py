"""Evolutes of strongly convex curves.

The evolute is kept as a function of the base curve's parameter t and never
re-fitted: gamma_e(t) = cn(rho) gamma + sn(rho) n is smooth in t even where
the evolute itself has cusps (the zeros of rho'), so every integral over the
evolute is pulled back to t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import spaceform as sfm
from . import spectral
from .curve import FINE_FACTOR, ClosedCurve, jet, require_strongly_convex
from .errors import InvalidInputError, SingularPointError, UnsupportedCurveError
from .spaceform import Model
from .topology import Arc, PathTrace

# |rho'| below this fraction of max |rho'| counts as zero
SINGULAR_REL = 1e-8
# max |d rho/dt| below this fraction of mean rho means rho is constant
CIRCLE_REL = 1e-8
EXCISION = 1e-4


def evolute_points(sf, gamma, n, rho):
    c = sf.c
    return np.asarray(sfm.cn(c, rho))[..., None] * gamma + np.asarray(sfm.sn(c, rho))[..., None] * n


def t_vectors(sf, gamma, n, rho):
    """T = c sn(rho) gamma - cn(rho) n, the unit field along the evolute."""
    c = sf.c
    return c * np.asarray(sfm.sn(c, rho))[..., None] * gamma - np.asarray(sfm.cn(c, rho))[..., None] * n


@dataclass(frozen=True)
class EvolutePath:
    base: ClosedCurve
    samples: np.ndarray
    velocity_norms: np.ndarray
    singular_params: np.ndarray
    degenerate_params: np.ndarray
    is_circle: bool
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def sf(self):
        return self.base.sf

    @property
    def regular_arcs(self) -> list:
        """Parameter intervals between consecutive singular points (cyclic)."""
        s = self.singular_params
        if self.is_circle or len(s) == 0:
            return [] if self.is_circle else [(0.0, 2 * math.pi)]
        return [(s[i], s[i + 1] if i + 1 < len(s) else s[0] + 2 * math.pi) for i in range(len(s))]

    @property
    def interpolant(self) -> spectral.Interpolant:
        if "interp" not in self._cache:
            self._cache["interp"] = spectral.Interpolant(self.samples)
        return self._cache["interp"]

    def trace(self, split: bool = False, nodes_per_arc: int | None = None) -> PathTrace:
        """The evolute as a closed path.

        With ``split=False`` the path is one periodic arc on the base grid.  With
        ``split=True`` it is broken at the singular points into regular arcs
        sampled at Gauss-Legendre nodes plus both endpoints; the end tangents
        are the one-sided limits -sign(rho') T.
        """
        sf = self.sf
        curve = self.base
        if not split or self.is_circle or len(self.singular_params) == 0:
            vel = spectral.derivative(self.samples, 1)
            T = t_vectors(sf, curve.samples, curve.normal, curve.rho)
            tang = -np.sign(curve.drho_dt)[:, None] * T
            w = np.full(curve.N, 2 * math.pi / curve.N)
            arc = Arc(self.samples, vel, w, tang, periodic=True)
            return PathTrace(sf, (arc,), source=f"evolute({curve.source})")
        arcs = []
        for a, b in self.regular_arcs:
            m = nodes_per_arc or max(64, int(math.ceil(curve.N * (b - a) / (2 * math.pi))))
            x, w = np.polynomial.legendre.leggauss(m)
            x = np.concatenate([[-1.0], x, [1.0]])
            w = np.concatenate([[0.0], w, [0.0]]) * (b - a) / 2
            t = a + (x + 1) * (b - a) / 2
            j = jet(curve, t)
            rho = j.rho
            pts = evolute_points(sf, j.gamma, j.n, rho)
            T = t_vectors(sf, j.gamma, j.n, rho)
            drho_dt = curve.rho_interpolant(t, 1)
            vel = -drho_dt[:, None] * T
            mid = curve.rho_interpolant(0.5 * (a + b), 1)
            tang = -np.sign(mid) * T
            arcs.append(Arc(pts, vel, w, tang))
        return PathTrace(sf, tuple(arcs), source=f"evolute({curve.source})")


def _sign_change_roots(f, grid_t, vals):
    roots = []
    n = len(grid_t)
    for i in range(n):
        j = (i + 1) % n
        a, b = vals[i], vals[j]
        if a == 0.0:
            roots.append(grid_t[i])
        elif a * b < 0:
            lo = grid_t[i]
            hi = grid_t[j] if j else 2 * math.pi
            roots.append(brentq(f, lo, hi, xtol=1e-13, rtol=1e-15) % (2 * math.pi))
    return np.array(sorted(roots))


def evolute(curve: ClosedCurve) -> EvolutePath:
    require_strongly_convex(curve)
    sf = curve.sf
    samples = evolute_points(sf, curve.samples, curve.normal, curve.rho)
    fine = spectral.refine(curve.rho, FINE_FACTOR, order=1)
    grid_t = spectral.grid(len(fine))
    scale = float(np.max(np.abs(fine)))
    if scale < CIRCLE_REL * float(np.mean(curve.rho)):
        return EvolutePath(curve, samples, np.abs(curve.drho_ds), np.zeros(0), np.zeros(0), True)
    small = np.abs(fine) < SINGULAR_REL * scale
    # a run of zero rho' is an arc of constant curvature: singular set not finite
    if np.any(small):
        run = 0
        longest = 0
        for s in np.concatenate([small, small]):
            run = run + 1 if s else 0
            longest = max(longest, run)
        if longest >= 8:
            raise UnsupportedCurveError("rho' vanishes on an interval; singular set is not finite")
    drho = curve.rho_interpolant.derivative(1)
    # bracket with the same evaluator brentq uses, so signs are consistent
    roots = _sign_change_roots(lambda t: float(drho(t)), grid_t, drho(grid_t))
    # double roots: local minima of |rho'| below threshold without a sign change
    a = np.abs(fine)
    is_min = (a <= np.roll(a, 1)) & (a <= np.roll(a, -1)) & small
    same_sign = np.sign(np.roll(fine, 1)) == np.sign(np.roll(fine, -1))
    degenerate = grid_t[is_min & same_sign]
    return EvolutePath(curve, samples, np.abs(curve.drho_ds), roots, degenerate, False)


def t_field(curve: ClosedCurve, t):
    """T(t) = c sn(rho) gamma - cn(rho) n at parameter(s) t."""
    j = jet(curve, t)
    if np.any(np.isnan(j.rho)):
        raise InvalidInputError("curve is not strongly convex at the requested parameter")
    return t_vectors(curve.sf, j.gamma, j.n, j.rho)


def evolute_geodesic_curvature(curve: ClosedCurve, t):
    """k_e = k / |rho'(s)| at regular points of the evolute."""
    j = jet(curve, t)
    threshold = SINGULAR_REL * float(np.max(np.abs(curve.drho_ds)))
    if np.any(np.abs(j.drho_ds) <= threshold) or np.any(np.isnan(j.rho)):
        raise SingularPointError("k_e requested at a singular point of the evolute")
    return j.k / np.abs(j.drho_ds)


@dataclass(frozen=True)
class TotalEvoluteCurvature:
    value: float
    direct: float | None
    gap: float | None
    excision: float


def _direct_integrand(ev: EvolutePath, t):
    """|<gamma_e'', J gamma_e'>| / |gamma_e'|^2 = k_e ds_e/dt, from the evolute alone."""
    sf = ev.sf
    P = ev.interpolant(t)
    d1 = ev.interpolant(t, 1)
    d2 = ev.interpolant(t, 2)
    if sf.model is Model.EMBEDDED:
        P = sfm.project_to_surface(P, sf)
        d1 = sfm.tangent_part(P, d1, sf)
    Jd1 = sfm.rotate90(P, d1, sf)
    return np.abs(np.asarray(sfm.inner(d2, Jd1, sf))) / np.asarray(sfm.inner(d1, d1, sf))


def total_evolute_curvature(curve: ClosedCurve, ev: EvolutePath | None = None) -> TotalEvoluteCurvature:
    """Integral of k_e ds_e over the evolute.

    Certified value: since ds_e = |rho'| ds and k_e = k/|rho'|, the integral is
    the integral of k ds over the base curve.  Cross-check: direct quadrature
    of the evolute's own curvature over each regular arc with the ends
    excised, plus a constant extrapolation across the excised pieces.
    """
    ev = evolute(curve) if ev is None else ev
    value = curve.integrate(curve.k)
    if ev.is_circle:
        return TotalEvoluteCurvature(value, None, None, EXCISION)
    x, w = np.polynomial.legendre.leggauss(256)
    direct = 0.0
    for a, b in ev.regular_arcs:
        lo, hi = a + EXCISION, b - EXCISION
        t = lo + (x + 1) * (hi - lo) / 2
        direct += float(np.sum(_direct_integrand(ev, t) * w) * (hi - lo) / 2)
        ends = _direct_integrand(ev, np.array([lo, hi]))
        direct += EXCISION * float(ends.sum())
    return TotalEvoluteCurvature(value, direct, value - direct, EXCISION)
