"""Lattice polytopes, pavings, piecewise affine functions and subdivisions."""

from gkz_mori.pavings.functions import (
    AffineMap,
    AffinePiece,
    BendingData,
    PiecewiseAffineFn,
    bending_parameters,
    difference,
    interpolate,
    piecewise_from_values,
)
from gkz_mori.pavings.paving import Cell, Paving, Wall
from gkz_mori.pavings.polytope import LatticePolytope, lattice_points
from gkz_mori.pavings.subdivision import (
    CoherenceResult,
    coherence_constraints,
    generic_triangulation,
    is_coherent,
    normalized_volume,
    regular_subdivision,
    star_subdivision,
)

__all__ = [
    "AffineMap",
    "AffinePiece",
    "BendingData",
    "Cell",
    "CoherenceResult",
    "LatticePolytope",
    "Paving",
    "PiecewiseAffineFn",
    "Wall",
    "bending_parameters",
    "coherence_constraints",
    "difference",
    "generic_triangulation",
    "interpolate",
    "is_coherent",
    "lattice_points",
    "normalized_volume",
    "piecewise_from_values",
    "regular_subdivision",
    "star_subdivision",
]
