"""Wall crossings of the secondary fan."""

from gkz_mori.walls.crossing import (
    Circuit,
    WallCrossing,
    WallKind,
    classify_wall,
    cocycle_check,
    cocycle_holds,
    curve_multiple,
    g12,
    half_lattice_points,
    lineality_spanned_by_q,
    telescoping_sum,
    vanishes_outside_star,
)
from gkz_mori.walls.tau import TauContext, tau_context

__all__ = [
    "Circuit",
    "TauContext",
    "WallCrossing",
    "WallKind",
    "classify_wall",
    "cocycle_check",
    "cocycle_holds",
    "curve_multiple",
    "g12",
    "half_lattice_points",
    "lineality_spanned_by_q",
    "tau_context",
    "telescoping_sum",
    "vanishes_outside_star",
]
