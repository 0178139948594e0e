"""Enumeration of the regular triangulations of a lattice polytope.

Two independent algorithms are provided and must agree:

* ``oracle``: backtracking over all lattice simplices, closing open
  interior facets one at a time, followed by a coherence LP on every
  triangulation found;
* ``traversal``: breadth-first walk of the chamber graph, crossing each
  facet of a chamber by pushing an interior point of the facet slightly
  past it.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction

from gkz_mori.errors import GkzError
from gkz_mori.kernel.linalg import IntVector, Vector, dot, nullspace, rank
from gkz_mori.kernel.lp import LinearConstraint, Relation, lp_feasible
from gkz_mori.pavings.paving import Paving
from gkz_mori.pavings.polytope import LatticePolytope
from gkz_mori.pavings.subdivision import generic_triangulation, is_coherent, normalized_volume, regular_subdivision
from gkz_mori.secondary.chambers import GkzChamber, gkz_cone
from gkz_mori.secondary.lattice import LatticeLContext

logger = logging.getLogger(__name__)

__all__ = ["RegularTriangulation", "all_triangulations", "enumerate_regular_triangulations"]

Simplex = frozenset[IntVector]


@dataclass(frozen=True)
class RegularTriangulation:
    """A regular triangulation with a lift in the interior of its chamber."""

    triangulation: Paving
    witness: Vector


def _simplices(polytope: LatticePolytope) -> list[Simplex]:
    g = polytope.dim
    found = []
    for subset in itertools.combinations(polytope.points, g + 1):
        if rank([tuple(v) + (1,) for v in subset], g + 1) == g + 1:
            found.append(frozenset(subset))
    return found


def _compatible(first: Simplex, second: Simplex) -> bool:
    """Two full-dimensional simplices meet in a common face.

    Equivalent to a separating affine function vanishing on the common
    vertices, positive on the other vertices of ``first`` and negative on
    the other vertices of ``second``.
    """
    if first == second:
        return False
    common = first & second
    constraints = []
    for v in first | second:
        row = tuple(v) + (1,)
        if v in common:
            constraints.append(LinearConstraint.of(row, 0, Relation.EQ))
        elif v in first:
            constraints.append(LinearConstraint.of(row, 0, Relation.GT))
        else:
            constraints.append(LinearConstraint.of(tuple(-x for x in row), 0, Relation.GT))
    return lp_feasible(constraints).feasible


def all_triangulations(polytope: LatticePolytope) -> list[Paving]:
    """Every lattice triangulation of ``polytope`` (regular or not)."""
    simplices = _simplices(polytope)
    compatible = {(a, b): _compatible(a, b) for a, b in itertools.permutations(simplices, 2)}
    boundary = polytope.cone.inequalities

    def facets(simplex: Simplex) -> Iterator[frozenset[IntVector]]:
        for v in sorted(simplex):
            yield simplex - {v}

    def on_boundary(facet: frozenset[IntVector]) -> bool:
        return any(all(dot(a, polytope.embed(v)) == 0 for v in facet) for a in boundary)

    def side(facet: frozenset[IntVector], point: IntVector) -> int:
        normal = _hyperplane(facet, polytope.dim)
        value = dot(normal, tuple(point) + (1,))
        return (value > 0) - (value < 0)

    found: set[frozenset[Simplex]] = set()

    def extend(chosen: list[Simplex]) -> None:
        for simplex in chosen:
            for facet in facets(simplex):
                if on_boundary(facet):
                    continue
                if any(facet <= other for other in chosen if other is not simplex):
                    continue
                (apex,) = simplex - facet
                away = -side(facet, apex)
                for candidate in simplices:
                    if not facet <= candidate:
                        continue
                    (other_apex,) = candidate - facet
                    if side(facet, other_apex) != away:
                        continue
                    if all(compatible[(candidate, c)] for c in chosen):
                        extend(chosen + [candidate])
                return
        found.add(frozenset(chosen))

    origin = polytope.origin
    for start in simplices:
        if origin in start:
            extend([start])

    volume = normalized_volume(polytope)
    pavings = []
    for cells in found:
        paving = Paving.from_cells(polytope, cells, validate=False)
        if sum(cell.mult for cell in paving.maximal_cells) != volume:
            raise GkzError(f"triangulation {paving.cell_indices()} does not cover the polytope")
        pavings.append(paving)
    logger.info("oracle found %d triangulations", len(pavings))
    return sorted(pavings, key=lambda p: p.cell_indices())


def _hyperplane(facet: frozenset[IntVector], g: int) -> Vector:
    (normal,) = nullspace([tuple(v) + (1,) for v in sorted(facet)], g + 1)
    return normal


def _oracle(polytope: LatticePolytope) -> list[RegularTriangulation]:
    result = []
    for paving in all_triangulations(polytope):
        coherence = is_coherent(paving)
        if coherence.witness is not None:
            result.append(RegularTriangulation(paving, coherence.witness))
    return result


def _chamber_witness(chamber: GkzChamber) -> RegularTriangulation:
    return RegularTriangulation(chamber.triangulation, chamber.interior_lift())


def _cross(
    polytope: LatticePolytope, context: LatticeLContext, chamber: GkzChamber, facet_normal: Vector
) -> GkzChamber:
    """The chamber on the other side of the facet ``facet_normal·y = 0`` of ``chamber``."""
    facet = chamber.cone.face([facet_normal])
    inside = facet.interior_point()
    push = chamber.cone.interior_point()
    scale = 2
    while True:
        target = tuple(scale * a - b for a, b in zip(inside, push))
        lift = context.section(target)
        paving = regular_subdivision(polytope, lift)
        if paving.is_triangulation:
            neighbour = gkz_cone(paving, context)
            if neighbour.cone.in_interior(target) and facet.is_face_of(neighbour.cone):
                return neighbour
        scale *= 2


def _traversal(polytope: LatticePolytope, context: LatticeLContext) -> list[RegularTriangulation]:
    start, _ = generic_triangulation(polytope)
    first = gkz_cone(start, context)
    seen = {start: first}
    queue = deque([first])
    while queue:
        chamber = queue.popleft()
        for normal in chamber.cone.inequalities:
            neighbour = _cross(polytope, context, chamber, tuple(Fraction(x) for x in normal))
            if neighbour.triangulation not in seen:
                seen[neighbour.triangulation] = neighbour
                queue.append(neighbour)
    logger.info("traversal visited %d chambers", len(seen))
    chambers = sorted(seen.values(), key=lambda c: c.triangulation.cell_indices())
    return [_chamber_witness(c) for c in chambers]


def enumerate_regular_triangulations(
    polytope: LatticePolytope, *, oracle: bool = False, context: LatticeLContext | None = None
) -> list[RegularTriangulation]:
    """All regular triangulations of ``polytope``, each with an interior witness lift.

    Args:
        polytope: A desk-scale polytope.
        oracle: Use the exhaustive search plus coherence filter instead of
            the chamber-graph traversal.
        context: Precomputed lattice context.
    """
    if oracle:
        return sorted(_oracle(polytope), key=lambda r: r.triangulation.cell_indices())
    return _traversal(polytope, context or LatticeLContext.build(polytope))
