"""Evolutes, curvature integrals and areas with multiplicity for closed curves
on the plane, the sphere and the hyperbolic plane."""

from .catalog import FIXTURES, load_curve, realize, save_curve
from .curve import ClosedCurve, from_samples, jet, length, parallel_curve, strong_convexity_margin
from .evolute import evolute, total_evolute_curvature
from .spaceform import SpaceForm, arccot, cn, cotc, sn, tanc
from .theorems import TheoremReport, run_suite
from .topology import area_grid_oracle, area_with_multiplicities, rotation_index, winding_number

__all__ = [
    "FIXTURES",
    "ClosedCurve",
    "SpaceForm",
    "TheoremReport",
    "arccot",
    "area_grid_oracle",
    "area_with_multiplicities",
    "cn",
    "cotc",
    "evolute",
    "from_samples",
    "jet",
    "length",
    "load_curve",
    "parallel_curve",
    "realize",
    "rotation_index",
    "run_suite",
    "save_curve",
    "sn",
    "strong_convexity_margin",
    "tanc",
    "total_evolute_curvature",
    "winding_number",
]
