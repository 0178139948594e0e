"""Regular subdivisions, coherence testing and star subdivisions.

Regular subdivisions are read from the lower hull: for a lift
``ψ: I -> Q`` the maximal cells are the projections of the facets of
``conv{(ω, ψ(ω))} + R_{>=0}·(0, 1)`` that are not vertical. Points lifted
strictly above the hull, or lying on it without being a vertex of a cell,
are unused.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from gkz_mori.errors import InvalidPaving
from gkz_mori.kernel.cones import RationalCone
from gkz_mori.kernel.linalg import IntVector, Scalar, Vector, affine_coordinates, dot, rank, vector
from gkz_mori.kernel.lp import FeasibilityResult, LinearConstraint, Relation, lp_feasible
from gkz_mori.pavings.paving import Cell, Paving
from gkz_mori.pavings.polytope import LatticePolytope

logger = logging.getLogger(__name__)

__all__ = [
    "CoherenceResult",
    "coherence_constraints",
    "generic_triangulation",
    "is_coherent",
    "normalized_volume",
    "regular_subdivision",
    "star_subdivision",
]


def regular_subdivision(polytope: LatticePolytope, lift: Sequence[Scalar], *, validate: bool = False) -> Paving:
    """The regular subdivision of ``polytope`` induced by ``lift``.

    Args:
        polytope: The polytope ``Q``.
        lift: One rational height per lattice point, in the order of
            ``polytope.points``.
        validate: Re-check the paving axioms on the result.
    """
    heights = vector(lift)
    if len(heights) != polytope.n_points:
        raise ValueError(f"expected {polytope.n_points} heights, got {len(heights)}")
    g = polytope.dim
    lifted = [polytope.embed(p) + (h,) for p, h in zip(polytope.points, heights)]
    upward = tuple(Fraction(0) for _ in range(g + 1)) + (Fraction(1),)
    hull = RationalCone.from_generators(lifted + [upward], dim=g + 2)
    cells = []
    for a in hull.inequalities:
        if a[-1] <= 0:
            continue
        cells.append([p for p, v in zip(polytope.points, lifted) if dot(a, v) == 0])
    paving = Paving.from_cells(polytope, cells, validate=validate)
    logger.debug("lift %s gives %d maximal cells", [str(h) for h in heights], len(paving.maximal_cells))
    return paving


def _affine_basis(cell: Cell) -> list[IntVector]:
    basis: list[IntVector] = []
    for v in cell.sorted_vertices:
        candidate = basis + [v]
        if rank([tuple(p) + (1,) for p in candidate], len(v) + 1) == len(candidate):
            basis = candidate
    return basis


def coherence_constraints(paving: Paving) -> list[LinearConstraint]:
    """Linear conditions on a lift ``ψ`` whose regular subdivision is ``paving``.

    For each maximal cell the affine extension of ``ψ`` from an affine
    basis of its vertices must agree with ``ψ`` on the remaining vertices
    and lie strictly below ``ψ`` at every other lattice point.
    """
    polytope = paving.polytope
    index = {p: i for i, p in enumerate(polytope.points)}
    n = polytope.n_points
    constraints = []
    for cell in paving.maximal_cells:
        basis = _affine_basis(cell)
        for point in polytope.points:
            if point in basis:
                continue
            weights = affine_coordinates(point, basis)
            if weights is None:
                raise InvalidPaving(f"cell {cell.sorted_vertices} is not full-dimensional")
            row = [Fraction(0)] * n
            row[index[point]] += 1
            for b, w in zip(basis, weights):
                row[index[b]] -= w
            relation = Relation.EQ if point in cell.vertices else Relation.GT
            constraints.append(LinearConstraint(tuple(row), Fraction(0), relation))
    return constraints


@dataclass(frozen=True)
class CoherenceResult:
    """Outcome of :func:`is_coherent`.

    Attributes:
        witness: A lift inducing the paving, when one exists.
        certificate: Multipliers on :attr:`constraints` proving that none exists.
        constraints: The linear system that was solved.
    """

    witness: Vector | None
    certificate: Vector | None
    constraints: tuple[LinearConstraint, ...]

    @property
    def coherent(self) -> bool:
        return self.witness is not None


def is_coherent(paving: Paving) -> CoherenceResult:
    """Decide whether ``paving`` is regular, with a witness lift or a certificate."""
    constraints = coherence_constraints(paving)
    result: FeasibilityResult = lp_feasible(constraints, dimension=paving.polytope.n_points)
    logger.info(
        "paving with %d cells is %s", len(paving.maximal_cells), "coherent" if result.feasible else "not coherent"
    )
    return CoherenceResult(result.witness, result.certificate, tuple(constraints))


def star_subdivision(paving: Paving, point: Sequence[int]) -> Paving:
    """Subdivide the star of the carrier of ``point`` by coning from ``point``.

    Raises:
        InvalidPaving: If ``point`` is not a lattice point of ``Q`` or is
            already a vertex of the paving.
    """
    p = tuple(int(x) for x in point)
    if p not in paving.polytope.points:
        raise InvalidPaving(f"{p} is not a lattice point of the polytope")
    if p in paving.used_points:
        raise InvalidPaving(f"{p} is already a vertex of the paving")
    carrier = paving.carrier(p)
    cells: list[frozenset[IntVector]] = []
    for cell in paving.maximal_cells:
        if not carrier.vertices <= cell.vertices:
            cells.append(cell.vertices)
            continue
        for facet in paving.facets_of(cell):
            if not carrier.vertices <= facet:
                cells.append(facet | {p})
    logger.debug("star subdivision at %s replaces %d cells", p, len(paving.star(carrier)))
    return Paving.from_cells(paving.polytope, cells)


def generic_triangulation(polytope: LatticePolytope) -> tuple[Paving, Vector]:
    """A regular triangulation from the lift ``ψ(ω_k) = M^k``, doubling ``M`` as needed."""
    base = 2
    while True:
        lift = vector(base**k for k in range(polytope.n_points))
        paving = regular_subdivision(polytope, lift)
        if paving.is_triangulation:
            return paving, lift
        base *= 2


def normalized_volume(polytope: LatticePolytope) -> int:
    """``g!`` times the Euclidean volume of ``polytope``."""
    triangulation, _ = generic_triangulation(polytope)
    return sum(cell.mult for cell in triangulation.maximal_cells)
