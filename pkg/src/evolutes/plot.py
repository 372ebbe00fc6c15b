"""Static SVG pictures of curves and their evolutes in a chart.

Output is plain text assembled in a fixed order with fixed number formatting,
so identical inputs give byte-identical files.
"""

from __future__ import annotations

import numpy as np

from .curve import ClosedCurve
from .evolute import evolute
from .topology import Chart, ChartKind, PathTrace, make_chart

CANVAS = 1000.0
MARGIN = 60.0


def _fmt(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    """Affine map from chart coordinates to canvas coordinates (y pointing down)."""

    def __init__(self, pts: np.ndarray):
        lo = pts.min(axis=0)
        hi = pts.max(axis=0)
        span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
        self.scale = (CANVAS - 2 * MARGIN) / span
        self.center = (lo + hi) / 2.0

    def __call__(self, w):
        w = np.asarray(w, dtype=float)
        x = CANVAS / 2 + (w[..., 0] - self.center[0]) * self.scale
        y = CANVAS / 2 - (w[..., 1] - self.center[1]) * self.scale
        return np.stack([x, y], axis=-1)


def _path_d(xy: np.ndarray, closed: bool = True) -> str:
    parts = [f"M{_fmt(xy[0, 0])},{_fmt(xy[0, 1])}"]
    parts += [f"L{_fmt(x)},{_fmt(y)}" for x, y in xy[1:]]
    if closed:
        parts.append("Z")
    return " ".join(parts)


def render(
    curve: ClosedCurve | PathTrace,
    with_evolute: bool = False,
    chart: Chart | None = None,
    chart_kind: str | None = None,
    base_point=None,
) -> str:
    """SVG text showing the curve, optionally its evolute with cusp markers,
    the chart boundary (when it has one) and the chart base point.

    Raises DomainError when a point falls outside the chart.
    """
    path = curve if isinstance(curve, PathTrace) else curve.trace()
    sf = path.sf
    if chart is None:
        base = path.default_base_point() if base_point is None else np.asarray(base_point, dtype=float)
        chart = make_chart(sf, base, chart_kind)
    layers = [("curve", chart(path.polyline))]
    cusps = np.zeros((0, 2))
    centre = None
    if with_evolute:
        if isinstance(curve, PathTrace):
            raise TypeError("evolutes are drawn for smooth curves only")
        ev = evolute(curve)
        if ev.is_circle:
            centre = chart(ev.samples.mean(axis=0) if sf.c == 0 else ev.samples[0])
        else:
            layers.append(("evolute", chart(ev.samples)))
            if len(ev.singular_params):
                cusps = chart(ev.interpolant(ev.singular_params))
    everything = [p for _, p in layers] + [cusps]
    radius = chart.boundary_radius() if chart.kind is ChartKind.KLEIN else None
    if radius is not None:
        everything.append(np.array([[-radius, -radius], [radius, radius]]))
    frame = _Frame(np.concatenate(everything))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(CANVAS)}" height="{int(CANVAS)}" '
        f'viewBox="0 0 {int(CANVAS)} {int(CANVAS)}">',
        f"<!-- surface c={sf.c!r}, chart {chart.kind.value} -->",
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    if radius is not None:
        cx, cy = frame(np.zeros(2))
        out.append(
            f'<circle class="chart-boundary" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(radius * frame.scale)}" '
            'fill="none" stroke="#999" stroke-dasharray="6,4"/>'
        )
    style = {"curve": 'stroke="#1f4e99" stroke-width="2"', "evolute": 'stroke="#b22222" stroke-width="1.5"'}
    for name, pts in layers:
        out.append(f'<path class="{name}" d="{_path_d(frame(pts))}" fill="none" {style[name]}/>')
    if centre is not None:
        x, y = frame(centre)
        out.append(f'<circle class="evolute-point" cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" fill="#b22222"/>')
    for x, y in frame(cusps):
        out.append(f'<circle class="cusp" cx="{_fmt(x)}" cy="{_fmt(y)}" r="4" fill="none" stroke="#b22222"/>')
    bx, by = frame(chart(chart.base))
    out.append(
        f'<g class="base-point" stroke="black"><line x1="{_fmt(bx - 6)}" y1="{_fmt(by)}" x2="{_fmt(bx + 6)}" y2="{_fmt(by)}"/>'
        f'<line x1="{_fmt(bx)}" y1="{_fmt(by - 6)}" x2="{_fmt(bx)}" y2="{_fmt(by + 6)}"/></g>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
