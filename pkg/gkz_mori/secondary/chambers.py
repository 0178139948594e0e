"""GKZ chambers ``C̃(T) ⊂ Q^I`` and their images ``C(T) ⊂ L*``.

A lift ``ψ`` lies in ``C̃(T)`` when the interpolation ``g_{ψ,T}`` is
convex and stays below ``ψ`` at every unused point. Convexity is one fold
inequality per interior wall; the second condition is one inequality per
unused point.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from gkz_mori.errors import NotATriangulation
from gkz_mori.kernel.cones import RationalCone
from gkz_mori.kernel.linalg import IntVector, Scalar, Vector, affine_coordinates, dot, primitive
from gkz_mori.pavings.functions import bending_parameters, interpolate
from gkz_mori.pavings.paving import Paving
from gkz_mori.secondary.lattice import LatticeLContext

logger = logging.getLogger(__name__)

__all__ = ["ChamberInequality", "GkzChamber", "InequalityKind", "gkz_cone", "satisfies_gkz_conditions"]

LSTAR = "L*"


class InequalityKind(StrEnum):
    FOLD = "fold"
    UNUSED = "unused"


@dataclass(frozen=True)
class ChamberInequality:
    """One defining inequality ``c·ψ >= 0`` of ``C̃(T)``.

    Attributes:
        kind: Fold across a wall, or an unused point.
        points: The wall vertices, or the unused point.
        covector: Primitive ``c ∈ Z^I`` (an affine relation, so ``c ∈ L``).
        coordinates: ``c`` in the Hermite basis of ``L``; the inequality on
            ``L*`` reads ``coordinates·y >= 0``.
    """

    kind: InequalityKind
    points: tuple[IntVector, ...]
    covector: IntVector
    coordinates: Vector


def _relation(paving: Paving, point: IntVector, vertices: Sequence[IntVector]) -> IntVector:
    """``e_point - Σ a_v e_v`` where ``point = Σ a_v v`` affinely."""
    polytope = paving.polytope
    index = {p: i for i, p in enumerate(polytope.points)}
    weights = affine_coordinates(point, vertices)
    if weights is None:
        raise NotATriangulation(f"{point} is not in the affine span of {list(vertices)}")
    row = [Fraction(0)] * polytope.n_points
    row[index[point]] += 1
    for v, w in zip(vertices, weights):
        row[index[v]] -= w
    return primitive(row)


def tilde_inequalities(paving: Paving, context: LatticeLContext) -> list[ChamberInequality]:
    """Fold inequalities (one per interior wall) and unused-point inequalities."""
    if not paving.is_triangulation:
        raise NotATriangulation("GKZ chambers are defined for triangulations")
    result = []
    for wall in paving.interior_walls:
        first, second = wall.cells
        (apex,) = first.vertices - wall.cell.vertices
        covector = _relation(paving, apex, second.sorted_vertices)
        result.append(
            ChamberInequality(
                InequalityKind.FOLD, tuple(wall.cell.sorted_vertices), covector, context.l_coordinates(covector)
            )
        )
    for point in paving.unused_points:
        cell = paving.containing(point)
        covector = _relation(paving, point, cell.sorted_vertices)
        result.append(ChamberInequality(InequalityKind.UNUSED, (point,), covector, context.l_coordinates(covector)))
    return result


@dataclass(frozen=True)
class GkzChamber:
    """The chamber of a regular triangulation.

    Attributes:
        triangulation: The triangulation ``T``.
        inequalities: Defining inequalities of ``C̃(T)``.
        tilde_cone: ``C̃(T)`` in ``Q^I``; its lineality contains the affine functions.
        cone: ``C(T)`` in ``L*``.
    """

    triangulation: Paving
    inequalities: tuple[ChamberInequality, ...]
    tilde_cone: RationalCone
    cone: RationalCone
    context: LatticeLContext

    @property
    def unused_points(self) -> tuple[IntVector, ...]:
        return self.triangulation.unused_points

    def contains(self, lift: Sequence[Scalar]) -> bool:
        return all(dot(i.covector, lift) >= 0 for i in self.inequalities)

    def contains_in_interior(self, lift: Sequence[Scalar]) -> bool:
        return all(dot(i.covector, lift) > 0 for i in self.inequalities)

    def interior_lift(self) -> Vector:
        """A lift in the interior of ``C̃(T)``, the section of an interior point of ``C(T)``."""
        return self.context.section(self.cone.interior_point())

    def fold_for(self, wall_vertices: Sequence[IntVector]) -> ChamberInequality:
        key = tuple(sorted(tuple(v) for v in wall_vertices))
        for inequality in self.inequalities:
            if inequality.kind is InequalityKind.FOLD and inequality.points == key:
                return inequality
        raise KeyError(f"no wall with vertices {list(key)}")


def gkz_cone(paving: Paving, context: LatticeLContext | None = None) -> GkzChamber:
    """Build ``C̃(T)`` and ``C(T)`` for a triangulation ``T``.

    Raises:
        NotATriangulation: If some cell of ``paving`` is not a simplex.
    """
    context = context or LatticeLContext.build(paving.polytope)
    inequalities = tilde_inequalities(paving, context)
    n = paving.polytope.n_points
    tilde = RationalCone.from_inequalities([i.covector for i in inequalities], dim=n, lattice=f"Z^{n}")
    cone = RationalCone.from_inequalities([i.coordinates for i in inequalities], dim=context.rank, lattice=LSTAR)
    logger.debug("chamber with %d inequalities, dimension %d", len(inequalities), cone.dimension)
    return GkzChamber(paving, tuple(inequalities), tilde, cone, context)


def satisfies_gkz_conditions(paving: Paving, lift: Sequence[Scalar]) -> bool:
    """Geometric membership test: ``g_{ψ,T}`` is convex and below ``ψ`` on unused points."""
    g = interpolate(paving, list(lift))
    if not all(b.in_monoid for b in bending_parameters(g)):
        return False
    heights = dict(zip(paving.polytope.points, lift))
    return all(g(point) <= heights[point] for point in paving.unused_points)
