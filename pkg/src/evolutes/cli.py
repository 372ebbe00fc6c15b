"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad input (unreadable curve file,
unknown theorem name), 3 precondition failure (curve not strongly convex,
point outside a chart, ...).  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import catalog, theorems
from .curve import DEFAULT_N, length, strong_convexity_margin
from .errors import CurveFileError, GeometryError
from .evolute import evolute
from .plot import render
from .topology import (
    PathTrace,
    area_grid_oracle,
    area_with_multiplicities,
    interior_angles,
    rotation_index,
)

OUTPUT_DIR_ENV = "EVOLUTES_OUTPUT_DIR"
ARC_NODES = 128

log = logging.getLogger("evolutes")


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def num(x) -> str:
    return f"{float(x):.12g}"


def _base_point(text: str | None):
    if text is None:
        return None
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --base-point {text!r}") from None


def _output_path(name: str | Path) -> Path:
    p = Path(name)
    if p.is_absolute():
        return p
    return Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / p


def _load(args):
    spec = catalog.load_curve(args.curve)
    obj = catalog.realize(spec, ARC_NODES if isinstance(spec, catalog.PiecewiseArcs) else args.n)
    if not isinstance(obj, PathTrace) and not obj.resolved:
        msg = f"warning: curve spectrum not resolved at N={obj.N} (tail ratio {obj.tail_ratio:.2e})"
        print(msg, file=sys.stderr)
        if args.strict:
            raise _Fail(1, "unresolved curve rejected by --strict")
    return spec, obj


def _print_reports(reports):
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        extra = f" gap={num(r.gap)}" if r.gap is not None else ""
        print(f"{status} {r.name}: lhs={num(r.lhs)} rhs={num(r.rhs)} residual={num(r.residual)} tol={num(r.tolerance)}{extra}")


def _write_reports(reports, args):
    target = args.report or f"{Path(args.curve).stem}.report.json"
    path = _output_path(target)
    path.parent.mkdir(parents=True, exist_ok=True)
    catalog.save_reports(reports, path)
    print(f"report: {path}", file=sys.stderr)


def _finish(reports, args) -> int:
    _print_reports(reports)
    _write_reports(reports, args)
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------
# commands


def cmd_invariants(args) -> int:
    _, obj = _load(args)
    O = args.base_point
    if isinstance(obj, PathTrace):
        F = area_with_multiplicities(obj, O)
        print(f"L {num(obj.length())}")
        print(f"F {num(F.value)}")
        print(f"corners {len(obj.corners)}")
        print(f"rotation_index {rotation_index(obj)}")
        for i, a in enumerate(interior_angles(obj)):
            print(f"interior_angle[{i}] {num(a)}")
        return 0
    curve = obj
    F = area_with_multiplicities(curve.trace(), O)
    print(f"N {curve.N}")
    print(f"L {num(length(curve))}")
    print(f"F {num(F.value)}")
    print(f"F_grid {num(area_grid_oracle(curve.trace(), args.grid_res).value)}")
    margin = strong_convexity_margin(curve)
    print(f"strong_convexity_margin {num(margin)}")
    print(f"k_g_min {num(curve.kg.min())}")
    print(f"k_g_max {num(curve.kg.max())}")
    if np.all(np.isfinite(curve.k)):
        print(f"k_min {num(curve.k.min())}")
        print(f"k_max {num(curve.k.max())}")
    if margin <= 0:
        print("strongly_convex no")
        return 0
    print("strongly_convex yes")
    print(f"rho_min {num(curve.rho.min())}")
    print(f"rho_max {num(curve.rho.max())}")
    ev = evolute(curve)
    if ev.is_circle:
        print("evolute point")
        print("singular_points 0")
        print(f"F_e {num(0.0)}")
        return 0
    Fe = area_with_multiplicities(ev.trace(), O)
    print(f"singular_points {len(ev.singular_params)}")
    print(f"F_e {num(Fe.value)}")
    oracle = area_grid_oracle(ev.trace(), args.grid_res)
    print(f"F_e_grid {num(oracle.value)} +- {num(oracle.estimated_error)}")
    return 0


def _require_curve(obj, command):
    if isinstance(obj, PathTrace):
        raise _Fail(3, f"{command} needs a smooth closed curve, not a piecewise path")
    return obj


def cmd_verify(args) -> int:
    names = [n.strip() for n in args.theorems.split(",") if n.strip()] if args.theorems else list(theorems.THEOREMS)
    unknown = [n for n in names if n not in theorems.THEOREMS]
    if unknown:
        raise _Fail(2, f"unknown theorem(s): {', '.join(unknown)}; known: {', '.join(theorems.THEOREMS)}")
    _, obj = _load(args)
    if isinstance(obj, PathTrace):
        if set(names) != {"gauss-bonnet"} and args.theorems:
            raise _Fail(3, "piecewise paths support only the gauss-bonnet check")
        return _finish([theorems.verify_gauss_bonnet_multiplicities(obj, args.tol)], args)
    reports = theorems.run_suite(obj, names, args.tol, steiner_r=args.r, base_point=args.base_point)
    return _finish(reports, args)


def cmd_steiner(args) -> int:
    _, obj = _load(args)
    curve = _require_curve(obj, "steiner")
    ctx = theorems._Context(curve, args.base_point)
    return _finish([theorems.verify_steiner(ctx, args.r, args.tol)], args)


def cmd_gauss_bonnet(args) -> int:
    _, obj = _load(args)
    path = obj if isinstance(obj, PathTrace) else obj.trace()
    reports = [theorems.verify_gauss_bonnet_multiplicities(path, args.tol)]
    if not isinstance(obj, PathTrace) and rotation_index(path) == 1:
        reports.append(theorems.verify_gauss_bonnet_simple(obj, args.tol))
    return _finish(reports, args)


def cmd_plot(args) -> int:
    _, obj = _load(args)
    if args.with_evolute:
        _require_curve(obj, "plot --with-evolute")
    svg = render(obj, with_evolute=args.with_evolute, chart_kind=args.chart, base_point=args.base_point)
    out = _output_path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(svg)
    print(f"plot: {out}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=DEFAULT_N, help="samples per curve (power of two)")
    common.add_argument("--tol", type=float, default=theorems.DEFAULT_TOL, help="tolerance for identities")
    common.add_argument("--grid-res", type=int, default=512, help="grid oracle resolution")
    common.add_argument("--base-point", type=_base_point, default=None, help="x,y[,z] centre of the area form")
    common.add_argument("--strict", action="store_true", help="fail on unresolved curves")
    common.add_argument("--report", default=None, help="report file (default <curve>.report.json)")

    p = argparse.ArgumentParser(prog="evolutes", description="Evolutes of curves on constant-curvature surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("invariants", parents=[common], help="print curvature and area invariants")
    s.add_argument("curve")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("verify", parents=[common], help="run theorem checks")
    s.add_argument("curve")
    s.add_argument("--theorems", default=None, help="comma-separated names: " + ", ".join(theorems.THEOREMS))
    s.add_argument("--r", type=float, default=0.1, help="parallel distance for the steiner check")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("steiner", parents=[common], help="parallel-curve area check")
    s.add_argument("curve")
    s.add_argument("--r", type=float, required=True)
    s.set_defaults(func=cmd_steiner)

    s = sub.add_parser("gauss-bonnet", parents=[common], help="Gauss-Bonnet with multiplicities")
    s.add_argument("curve")
    s.set_defaults(func=cmd_gauss_bonnet)

    s = sub.add_parser("plot", parents=[common], help="write an SVG picture")
    s.add_argument("curve")
    s.add_argument("out")
    s.add_argument("--with-evolute", action="store_true")
    s.add_argument("--chart", choices=["auto", "stereographic", "klein"], default="auto")
    s.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.ERROR, format="%(levelname)s: %(message)s", stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except _Fail as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except CurveFileError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GeometryError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
