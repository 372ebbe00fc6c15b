"""Numerical checks of the integral identities and inequalities for evolutes.

Each check returns a :class:`TheoremReport`.  The two sides of an identity are
computed by pipelines that share only the curve samples: curvature integrals
come from the spectral frame, areas from the polar line integral of the
(evolute) path, indices from angle tracking in a chart.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import asdict, dataclass, field
from enum import Enum

import numpy as np

from . import spaceform as sfm
from . import spectral
from .curve import ClosedCurve, frame, jet, length, parallel_curve, require_strongly_convex
from .errors import InvalidInputError
from .evolute import (
    EvolutePath,
    evolute,
    evolute_geodesic_curvature,
    t_vectors,
    total_evolute_curvature,
)
from .spaceform import Model
from .topology import PathTrace, area_with_multiplicities, interior_angles, rotation_index

DEFAULT_TOL = 1e-6
# gap below which an inequality counts as an equality
EQUALITY_TOL = 1e-9


class Kind(str, Enum):
    IDENTITY = "Identity"
    INEQUALITY = "Inequality"


@dataclass(frozen=True)
class TheoremReport:
    """Outcome of one check.

    Identities report ``residual = lhs - rhs`` and pass when its magnitude is at
    most ``tolerance``.  Inequalities read ``lhs <= rhs`` and report
    ``residual = max(0, lhs - rhs)``; their slack ``rhs - lhs`` is kept in
    ``gap``.
    """

    name: str
    kind: Kind
    lhs: float
    rhs: float
    lhs_source: str
    rhs_source: str
    residual: float
    tolerance: float
    passed: bool
    inputs_digest: str
    oracle_error: float = 0.0
    gap: float | None = None
    notes: tuple = field(default_factory=tuple)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        d["notes"] = list(self.notes)
        return d


def _identity(name, lhs, rhs, lhs_source, rhs_source, tol, digest, oracle_error=0.0, notes=(), extra_ok=True):
    residual = float(lhs - rhs)
    return TheoremReport(
        name=name,
        kind=Kind.IDENTITY,
        lhs=float(lhs),
        rhs=float(rhs),
        lhs_source=lhs_source,
        rhs_source=rhs_source,
        residual=residual,
        tolerance=tol,
        passed=bool(abs(residual) <= tol and extra_ok),
        inputs_digest=digest,
        oracle_error=float(oracle_error),
        notes=tuple(notes),
    )


def _inequality(name, lhs, rhs, lhs_source, rhs_source, tol, digest, is_circle, oracle_error=0.0, notes=()):
    """lhs <= rhs, with equality exactly for circles."""
    residual = max(0.0, float(lhs - rhs))
    gap = float(rhs - lhs)
    tight = abs(gap) <= max(EQUALITY_TOL, oracle_error)
    notes = tuple(notes) + (("equality (circle)" if is_circle else "strict") + f"; gap {gap:.6g}",)
    equality_ok = tight if is_circle else not tight
    if not equality_ok:
        notes += ("equality case does not match circle test",)
    return TheoremReport(
        name=name,
        kind=Kind.INEQUALITY,
        lhs=float(lhs),
        rhs=float(rhs),
        lhs_source=lhs_source,
        rhs_source=rhs_source,
        residual=residual,
        tolerance=tol,
        passed=bool(residual <= tol and equality_ok),
        inputs_digest=digest,
        oracle_error=float(oracle_error),
        gap=gap,
        notes=notes,
    )


def digest_samples(points, sf, label: str = "") -> str:
    h = hashlib.sha256(np.ascontiguousarray(points, dtype=float).tobytes()).hexdigest()[:16]
    head = f"{label} " if label else ""
    return f"{head}c={sf.c:g} N={len(points)} sha256:{h}"


def curve_digest(curve: ClosedCurve) -> str:
    return digest_samples(curve.samples, curve.sf, curve.source)


class _Context:
    """Per-curve cache of the expensive shared inputs of several reports."""

    def __init__(self, curve: ClosedCurve, base_point=None):
        if curve.orientation != 1:
            raise InvalidInputError("curve must be positively oriented")
        require_strongly_convex(curve)
        self.curve = curve
        self.sf = curve.sf
        self.c = curve.sf.c
        self.digest = curve_digest(curve)
        self.base_point = base_point
        self._ev = None
        self._F = None
        self._Fe = None

    @property
    def ev(self) -> EvolutePath:
        if self._ev is None:
            self._ev = evolute(self.curve)
        return self._ev

    @property
    def area(self):
        if self._F is None:
            self._F = area_with_multiplicities(self.curve.trace(), self.base_point)
        return self._F

    @property
    def evolute_area(self):
        """(F_e, estimated error); a point evolute has F_e = 0."""
        if self._Fe is None:
            if self.ev.is_circle:
                self._Fe = (0.0, 0.0)
            else:
                a = area_with_multiplicities(self.ev.trace(), self.base_point)
                self._Fe = (a.value, a.estimated_error)
        return self._Fe

    @property
    def total_k(self) -> float:
        return self.curve.integrate(self.curve.k)

    @property
    def tan_half_rho(self) -> float:
        return self.curve.integrate(sfm.tanc(self.c, self.curve.rho / 2.0))


def _ctx(curve) -> _Context:
    return curve if isinstance(curve, _Context) else _Context(curve)


def verify_total_curvature(curve, tol: float = DEFAULT_TOL) -> TheoremReport:
    """Integral of k ds minus 2 pi equals c |F_e|."""
    x = _ctx(curve)
    Fe, err = x.evolute_area
    return _identity(
        "total-curvature",
        x.total_k - 2 * math.pi,
        x.c * abs(Fe),
        "spectral quadrature of k ds",
        "c * |area of evolute| (polar line integral)",
        tol,
        x.digest,
        oracle_error=abs(x.c) * err,
        notes=(f"F_e = {Fe:.12g}",),
    )


def verify_tan_half_rho(curve, tol: float = DEFAULT_TOL) -> TheoremReport:
    """Integral of tan_c(rho/2) ds equals F + |F_e|."""
    x = _ctx(curve)
    Fe, err = x.evolute_area
    F = x.area
    return _identity(
        "tan-half-rho",
        x.tan_half_rho,
        F.value + abs(Fe),
        "spectral quadrature of tan_c(rho/2) ds",
        "area of curve + |area of evolute| (polar line integrals)",
        tol,
        x.digest,
        oracle_error=F.estimated_error + err,
    )


def check_ros(curve, tol: float = DEFAULT_TOL) -> TheoremReport:
    """F <= integral of tan_c(rho/2) ds, with equality only for circles."""
    x = _ctx(curve)
    return _inequality(
        "ros",
        x.area.value,
        x.tan_half_rho,
        "area of curve (polar line integral)",
        "spectral quadrature of tan_c(rho/2) ds",
        tol,
        x.digest,
        x.ev.is_circle,
    )


def steiner_rhs(c: float, L: float, F: float, r: float) -> float:
    """Closed form of F_r - F for the outer parallel curve at distance r."""
    return L * float(sfm.sn(c, r)) + 2.0 * float(sfm.sn(c, r / 2.0)) ** 2 * (2 * math.pi - c * F)


def verify_steiner(curve, r: float, tol: float = DEFAULT_TOL) -> TheoremReport:
    """Area growth of outer parallel curves, plus the pointwise length ratio.

    Besides the area identity the report checks, at every sample, that the
    parallel curve's speed over the original speed equals sn(rho + r)/sn(rho)
    and that its radius of curvature is rho + r.
    """
    x = _ctx(curve)
    cv = x.curve
    par = parallel_curve(cv, r)
    Fr = area_with_multiplicities(par.trace(), x.base_point)
    F = x.area
    L = length(cv)
    c = x.c
    ratio = par.speed / cv.speed
    expected = sfm.sn(c, cv.rho + r) / sfm.sn(c, cv.rho)
    ratio_err = float(np.max(np.abs(ratio - expected)))
    rho_err = float(np.max(np.abs(par.rho - (cv.rho + r))))
    return _identity(
        "steiner",
        Fr.value - F.value,
        steiner_rhs(c, L, F.value, r),
        "area of parallel curve - area of curve (polar line integrals)",
        "L sn_c(r) + 2 sn_c(r/2)^2 (2 pi - c F)",
        tol,
        x.digest + f" r={r:g}",
        oracle_error=Fr.estimated_error + F.estimated_error,
        notes=(f"speed ratio error {ratio_err:.3g}", f"rho_r - rho - r error {rho_err:.3g}"),
        extra_ok=ratio_err <= tol and rho_err <= tol,
    )


def isoperimetric_deficit(L: float, F: float, c: float) -> float:
    return L * L - 4 * math.pi * F + c * F * F


def verify_deficit(curve, tol: float = DEFAULT_TOL) -> list:
    """The isoperimetric inequality and three upper bounds on the deficit."""
    x = _ctx(curve)
    c = x.c
    L = length(x.curve)
    F = x.area.value
    Fe, err = x.evolute_area
    circle = x.ev.is_circle
    delta = isoperimetric_deficit(L, F, c)
    d = x.digest
    note = (f"deficit = {delta:.12g}",)
    out = [
        _inequality(
            "isoperimetric",
            4 * math.pi * F - c * F * F,
            L * L,
            "4 pi F - c F^2",
            "L^2",
            tol,
            d,
            circle,
            notes=note,
        ),
        _inequality(
            "deficit-tan-half-rho",
            (L * L + c * F * F) / (4 * math.pi),
            x.tan_half_rho + c * Fe * Fe / (4 * math.pi),
            "(L^2 + c F^2) / 4 pi",
            "integral of tan_c(rho/2) ds + c F_e^2 / 4 pi",
            tol,
            d,
            circle,
            oracle_error=err,
            notes=note,
        ),
        _inequality(
            "deficit-evolute-area",
            delta,
            c * Fe * Fe + 4 * math.pi * abs(Fe),
            "L^2 - 4 pi F + c F^2",
            "c F_e^2 + 4 pi |F_e|",
            tol,
            d,
            circle,
            oracle_error=4 * math.pi * err,
            notes=note,
        ),
    ]
    if c != 0:
        K = x.total_k
        out.append(
            _inequality(
                "deficit-total-curvature",
                delta,
                (K * K - 4 * math.pi**2) / c,
                "L^2 - 4 pi F + c F^2",
                "((integral of k ds)^2 - 4 pi^2) / c",
                tol,
                d,
                circle,
                notes=note,
            )
        )
    return out


def gauss_bonnet_rhs(c: float, F: float, angles, nu: int, orientation: int) -> float:
    """-cF + 2 pi nu - sum of exterior angles, exterior angle = orientation (pi - theta).

    For a positively oriented path this is -cF + sum(theta) + (2 nu - N) pi.
    """
    return -c * F + 2 * math.pi * nu - orientation * sum(math.pi - t for t in angles)


def verify_gauss_bonnet_multiplicities(path: PathTrace, tol: float = DEFAULT_TOL) -> TheoremReport:
    """Gauss-Bonnet for a closed piecewise smooth path, counted with multiplicity.

    The rotation index is measured by tangent tracking, never solved for.
    k_g is the signed geodesic curvature with respect to the surface
    orientation.
    """
    sf = path.sf
    lhs = path.geodesic_curvature_integral()
    nu = rotation_index(path)
    orientation = 1 if nu >= 0 else -1
    angles = interior_angles(path, orientation)
    F = area_with_multiplicities(path)
    rhs = gauss_bonnet_rhs(sf.c, F.value, angles, nu, orientation)
    digest = digest_samples(path.polyline, sf, path.source)
    return _identity(
        "gauss-bonnet",
        lhs,
        rhs,
        "sum over arcs of signed k_g ds",
        "-cF + sum(theta_k) + (2 nu - N) pi, nu by tangent tracking",
        tol,
        digest,
        oracle_error=abs(sf.c) * F.estimated_error,
        notes=(
            f"N = {len(angles)}",
            f"nu = {nu}",
            "interior angles = " + ", ".join(f"{a:.12g}" for a in angles),
            "signed k_g",
        ),
    )


def verify_gauss_bonnet_simple(curve: ClosedCurve, tol: float = DEFAULT_TOL) -> TheoremReport:
    """Classical case for a simple smooth closed curve: integral of k_g ds = 2 pi - cF."""
    F = area_with_multiplicities(curve.trace())
    return _identity(
        "gauss-bonnet-simple",
        curve.integrate(curve.kg),
        2 * math.pi - curve.sf.c * F.value,
        "spectral quadrature of signed k_g ds",
        "2 pi - c F",
        tol,
        curve_digest(curve),
        oracle_error=abs(curve.sf.c) * F.estimated_error,
    )


def verify_evolute_gauss_bonnet(curve, tol: float = DEFAULT_TOL) -> TheoremReport:
    """Total curvature of the evolute equals c |F_e| + 2 pi.

    Also records the cusp count N and the rotation index nu of the evolute
    (measured on the split trace), which must satisfy N + 2 nu = 2, and checks
    that the certified value agrees with the integral of k ds.
    """
    x = _ctx(curve)
    tec = total_evolute_curvature(x.curve, x.ev)
    Fe, err = x.evolute_area
    notes = []
    ok = abs(tec.value - x.total_k) <= tol
    if tec.direct is not None:
        notes.append(f"direct quadrature gap {tec.gap:.3g}")
    if not x.ev.is_circle:
        N = len(x.ev.singular_params)
        nu = rotation_index(x.ev.trace(split=True))
        notes.append(f"N = {N}, nu = {nu}, N + 2 nu = {N + 2 * nu}")
        ok = ok and N + 2 * nu == 2
    else:
        notes.append("point evolute")
    return _identity(
        "evolute-gauss-bonnet",
        tec.value,
        x.c * abs(Fe) + 2 * math.pi,
        "integral of k_e ds_e (pulled back to the curve)",
        "c |F_e| + 2 pi",
        tol,
        x.digest,
        oracle_error=abs(x.c) * err,
        notes=tuple(notes),
        extra_ok=ok,
    )


# ---------------------------------------------------------------------------
# pointwise identities


def pointwise_residuals(curve: ClosedCurve, t) -> dict:
    """Maximum residual of each pointwise identity over the parameters t.

    Derivatives of the normal, the evolute and the T field are taken from
    their own spectral interpolants, not from the closed forms being tested.
    """
    sf = curve.sf
    c = sf.c
    t = np.asarray(t, dtype=float)
    j = jet(curve, t)
    out = {}
    out["curvature"] = float(np.max(np.abs(j.k**2 - (j.k_g**2 + c)) / np.maximum(j.k**2, 1.0)))
    # k_g from the oriented normal equals |covariant acceleration| when convex
    d1, d2 = j.dgamma, j.ddgamma
    acc = (d2 - (np.asarray(sfm.inner(d1, d2, sf)) / j.speed**2)[:, None] * d1) / j.speed[:, None] ** 2
    cov = acc + c * j.gamma if sf.model is Model.EMBEDDED else acc
    out["unsigned-kg"] = float(np.max(np.abs(np.sqrt(np.abs(np.asarray(sfm.inner(cov, cov, sf)))) - j.k_g)))
    out["cot-rho"] = float(np.max(np.abs(sfm.cotc(c, j.rho) - j.k_g) / np.abs(j.k_g)))
    if c == 0:
        out["half-angle"] = float(np.max(np.abs(sfm.tanc(0.0, j.rho / 2) - j.rho / 2)))
    else:
        out["half-angle"] = float(np.max(np.abs(c * sfm.tanc(c, j.rho / 2) + j.k_g - j.k)))
    out["inverse-sn"] = float(np.max(np.abs(1.0 / sfm.sn(c, j.rho) - j.k) / j.k))
    # derivative of the normal along s
    n_int = spectral.Interpolant(curve.normal)
    dn_ds = n_int(t, 1) / j.speed[:, None]
    expect = -sfm.cotc(c, j.rho)[:, None] * j.tangent
    out["normal-derivative"] = float(np.max(np.abs(dn_ds - expect)))
    # evolute velocity
    ev = evolute(curve)
    dge_ds = ev.interpolant(t, 1) / j.speed[:, None]
    ss = acc  # second derivative of gamma by arclength (ambient)
    expect = (j.drho_ds * sfm.sn(c, j.rho))[:, None] * ss
    out["evolute-tangent"] = float(np.max(np.abs(dge_ds - expect)))
    out["evolute-speed"] = float(
        np.max(np.abs(np.asarray(sfm.norm(dge_ds, sf)) - np.abs(j.drho_ds)))
    )
    # T field: dgamma_e/ds = -rho' T, and <DT/ds, gamma'> = k
    T = t_vectors(sf, curve.samples, curve.normal, curve.rho)
    Tj = t_vectors(sf, j.gamma, j.n, j.rho)
    out["t-field-sign"] = float(np.max(np.abs(dge_ds + j.drho_ds[:, None] * Tj)))
    dT = spectral.Interpolant(T)(t, 1) / j.speed[:, None]
    if sf.model is Model.EMBEDDED:
        ge = ev.interpolant(t)
        dT = dT - c * np.asarray(sfm.inner(dT, ge, sf))[:, None] * ge
    out["t-field-derivative"] = float(np.max(np.abs(np.asarray(sfm.inner(dT, j.tangent, sf)) - j.k)))
    # evolute normal and curvature at regular points, from the evolute's own jet
    scale = float(np.max(np.abs(curve.drho_ds)))
    regular = np.abs(j.drho_ds) > 1e-2 * max(scale, 1e-300) if scale > 0 else np.zeros(len(t), bool)
    if np.any(regular):
        tr = t[regular]
        ge = ev.interpolant(tr)
        v1 = ev.interpolant(tr, 1)
        v2 = ev.interpolant(tr, 2)
        if sf.model is Model.EMBEDDED:
            ge = sfm.project_to_surface(ge, sf)
            v1 = sfm.tangent_part(ge, v1, sf)
        _, _, ne, kge = frame(sf, ge, v1, v2)
        sign = -np.sign(j.drho_ds[regular])
        out["evolute-normal"] = float(np.max(np.abs(ne - sign[:, None] * j.tangent[regular])))
        ke = evolute_geodesic_curvature(curve, tr)
        out["evolute-curvature"] = float(np.max(np.abs(np.abs(kge) - ke) / ke))
        out["evolute-curvature-sn"] = float(
            np.max(np.abs(ke * np.abs(j.drho_ds[regular]) * sfm.sn(c, j.rho[regular]) - 1.0))
        )
    return out


POINTWISE_TOL = {
    "curvature": 1e-8,
    "unsigned-kg": 1e-8,
    "cot-rho": 1e-8,
    "half-angle": 1e-9,
    "inverse-sn": 1e-8,
    "normal-derivative": 1e-6,
    "evolute-tangent": 1e-6,
    "evolute-speed": 1e-6,
    "t-field-sign": 1e-6,
    "t-field-derivative": 1e-6,
    "evolute-normal": 1e-4,
    "evolute-curvature": 1e-6,
    "evolute-curvature-sn": 1e-8,
}


def verify_pointwise(curve: ClosedCurve, t) -> list:
    x = _ctx(curve)
    res = pointwise_residuals(x.curve, t)
    return [
        _identity(f"pointwise:{k}", v, 0.0, "max residual over sampled parameters", "0",
                  POINTWISE_TOL[k], x.digest + f" points={len(np.atleast_1d(t))}")
        for k, v in res.items()
    ]


THEOREMS = {
    "total-curvature": verify_total_curvature,
    "tan-half-rho": verify_tan_half_rho,
    "ros": check_ros,
    "steiner": verify_steiner,
    "deficit": verify_deficit,
    "gauss-bonnet": verify_gauss_bonnet_simple,
    "evolute-gauss-bonnet": verify_evolute_gauss_bonnet,
}


def run_suite(curve: ClosedCurve, names=None, tol: float = DEFAULT_TOL, steiner_r: float = 0.1, base_point=None) -> list:
    """Run the named checks on one curve, sharing the expensive intermediate results.

    ``base_point`` (optional) is the centre of the polar area form used for
    every area in the suite.
    """
    names = list(THEOREMS) if names is None else list(names)
    unknown = [n for n in names if n not in THEOREMS]
    if unknown:
        raise KeyError(", ".join(unknown))
    x = _Context(curve, base_point)
    out = []
    for n in names:
        if n == "steiner":
            out.append(verify_steiner(x, steiner_r, tol))
        elif n == "deficit":
            out.extend(verify_deficit(x, tol))
        elif n == "gauss-bonnet":
            out.append(verify_gauss_bonnet_simple(curve, tol))
        else:
            out.append(THEOREMS[n](x, tol))
    return out
