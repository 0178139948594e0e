"""Toric varieties of pavings: divisors, curves and Mori chambers."""

from gkz_mori.toric.fan_data import (
    CurveClass,
    ToricFanData,
    build_fan_data,
    eff_curve_cone,
    is_relative_minimal,
    nef_cone,
    wall_curve_class,
)
from gkz_mori.toric.mori import MoriVerdict, MovingCone, divisor_polyhedron_vertices, mori_chamber_check, moving_cone

__all__ = [
    "CurveClass",
    "MoriVerdict",
    "MovingCone",
    "ToricFanData",
    "build_fan_data",
    "divisor_polyhedron_vertices",
    "eff_curve_cone",
    "is_relative_minimal",
    "mori_chamber_check",
    "moving_cone",
    "nef_cone",
    "wall_curve_class",
]
