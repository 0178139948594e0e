"""GKZ chambers, the map Ψ and the secondary fan."""

from gkz_mori.secondary.chambers import (
    ChamberInequality,
    GkzChamber,
    InequalityKind,
    gkz_cone,
    satisfies_gkz_conditions,
)
from gkz_mori.secondary.enumeration import RegularTriangulation, all_triangulations, enumerate_regular_triangulations
from gkz_mori.secondary.fan import FanWall, SamplingReport, SecondaryFan, build_secondary_fan, sample_directions
from gkz_mori.secondary.lattice import LatticeLContext, PsiMap, find_regular_simplex, project_to_Lstar, psi_map

__all__ = [
    "ChamberInequality",
    "FanWall",
    "GkzChamber",
    "InequalityKind",
    "LatticeLContext",
    "PsiMap",
    "RegularTriangulation",
    "SamplingReport",
    "SecondaryFan",
    "all_triangulations",
    "build_secondary_fan",
    "enumerate_regular_triangulations",
    "find_regular_simplex",
    "gkz_cone",
    "project_to_Lstar",
    "psi_map",
    "sample_directions",
    "satisfies_gkz_conditions",
]
