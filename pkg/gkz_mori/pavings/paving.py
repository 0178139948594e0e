"""Cells and pavings of a lattice polytope.

Cells are stored by their vertex set and their full lattice-point set.
Every paving built through :meth:`Paving.from_cells` is checked exactly
against the paving axioms: maximal cells are full-dimensional, any two of
them meet in a common face, and every facet not on the boundary of the
polytope is shared by exactly one other maximal cell.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from gkz_mori.errors import InvalidPaving
from gkz_mori.kernel.cones import RationalCone
from gkz_mori.kernel.linalg import IntVector, dot
from gkz_mori.kernel.normal_forms import index_in_saturation
from gkz_mori.pavings.polytope import LatticePolytope

logger = logging.getLogger(__name__)

__all__ = ["Cell", "Paving", "Wall"]


@dataclass(frozen=True)
class Cell:
    """A lattice polytope inside ``Q`` given by its vertices.

    Attributes:
        vertices: The extreme points of the cell.
        points: All lattice points of ``Q`` lying in the cell.
        cone: The cone over the cell in the linearised lattice.
    """

    vertices: frozenset[IntVector]
    points: frozenset[IntVector] = field(compare=False)
    cone: RationalCone = field(compare=False, repr=False)

    @classmethod
    def spanned_by(cls, polytope: LatticePolytope, points: Iterable[Sequence[int]]) -> Cell:
        """The convex hull of some lattice points of ``polytope``."""
        given = sorted({tuple(int(x) for x in p) for p in points})
        if not given:
            raise InvalidPaving("a cell needs at least one point")
        cone = RationalCone.from_generators(
            [polytope.embed(p) for p in given], dim=polytope.dim + 1, lattice="XX"
        )
        rays = set(cone.generators)
        vertices = frozenset(p for p in given if _ray(polytope, p) in rays)
        inside = frozenset(p for p in polytope.points if cone.contains(polytope.embed(p)))
        return cls(vertices, inside, cone)

    @property
    def dim(self) -> int:
        return self.cone.dimension - 1

    @property
    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    @property
    def sorted_vertices(self) -> list[IntVector]:
        return sorted(self.vertices)

    @property
    def mult(self) -> int:
        """Normalised volume of a lattice simplex relative to its affine lattice.

        Raises:
            InvalidPaving: If the cell is not a simplex.
        """
        if not self.is_simplex:
            raise InvalidPaving(f"multiplicity of a non-simplicial cell {self.sorted_vertices}")
        lifted = [tuple(v) + (1,) for v in self.sorted_vertices]
        return index_in_saturation(lifted, len(lifted[0]))

    @property
    def is_unimodular(self) -> bool:
        return self.is_simplex and self.mult == 1

    def contains_cell(self, other: Cell) -> bool:
        return other.vertices <= self.points


def _ray(polytope: LatticePolytope, p: IntVector) -> IntVector:
    return tuple(int(x) for x in polytope.embed(p))


@dataclass(frozen=True)
class Wall:
    """A codimension-one cell shared by two maximal cells."""

    cell: Cell
    cells: tuple[Cell, Cell]


@dataclass(frozen=True)
class Paving:
    """A paving of ``Q`` by lattice polytopes.

    Equality compares the polytope and the vertex sets of the maximal
    cells, so two pavings are equal exactly when they have the same cells.
    """

    polytope: LatticePolytope
    maximal_cells: tuple[Cell, ...]

    @classmethod
    def from_cells(
        cls, polytope: LatticePolytope, cells: Iterable[Iterable[Sequence[int]]], *, validate: bool = True
    ) -> Paving:
        """Build and (by default) validate a paving from point sets of its maximal cells.

        Raises:
            InvalidPaving: If a paving axiom fails; the message names the
                offending cells.
        """
        built = {Cell.spanned_by(polytope, c) for c in cells}
        ordered = tuple(sorted(built, key=lambda c: c.sorted_vertices))
        paving = cls(polytope, ordered)
        if validate:
            paving.validate()
        return paving

    @classmethod
    def from_indices(cls, polytope: LatticePolytope, cells: Iterable[Iterable[int]]) -> Paving:
        """Build a paving from cells given as indices into ``polytope.points``."""
        try:
            resolved = [[polytope.points[i] for i in cell] for cell in cells]
        except IndexError as exc:
            raise InvalidPaving(f"point index out of range (the polytope has {polytope.n_points} points)") from exc
        return cls.from_cells(polytope, resolved)

    @classmethod
    def coarse(cls, polytope: LatticePolytope) -> Paving:
        return cls.from_cells(polytope, [polytope.vertices])

    def validate(self) -> None:
        """Check the paving axioms exactly."""
        g = self.polytope.dim
        if not self.maximal_cells:
            raise InvalidPaving("a paving needs at least one cell")
        for cell in self.maximal_cells:
            if cell.dim != g:
                raise InvalidPaving(f"cell {cell.sorted_vertices} has dimension {cell.dim}, expected {g}")
        for first, second in itertools.combinations(self.maximal_cells, 2):
            meet = first.cone.intersection(second.cone)
            if not (meet.is_face_of(first.cone) and meet.is_face_of(second.cone)):
                raise InvalidPaving(
                    f"cells {first.sorted_vertices} and {second.sorted_vertices} do not meet in a common face"
                )
        boundary = self.polytope.cone.inequalities
        for cell in self.maximal_cells:
            for facet in self.facets_of(cell):
                lifted = [self.polytope.embed(v) for v in facet]
                if any(all(dot(a, v) == 0 for v in lifted) for a in boundary):
                    continue
                neighbours = [other for other in self.maximal_cells if other != cell and facet <= other.vertices]
                if len(neighbours) != 1:
                    raise InvalidPaving(
                        f"interior facet {sorted(facet)} of cell {cell.sorted_vertices} is shared by "
                        f"{len(neighbours)} other cells"
                    )
        logger.debug("validated paving with %d maximal cells", len(self.maximal_cells))

    def facets_of(self, cell: Cell) -> list[frozenset[IntVector]]:
        """Vertex sets of the facets of ``cell``."""
        return [
            frozenset(v for v in cell.vertices if dot(a, self.polytope.embed(v)) == 0)
            for a in cell.cone.inequalities
        ]

    def face_vertex_sets(self, cell: Cell) -> set[frozenset[IntVector]]:
        """Vertex sets of all nonempty faces of ``cell`` (including the cell)."""
        faces = {cell.vertices}
        frontier = set(self.facets_of(cell))
        while frontier:
            faces |= frontier
            frontier = {a & b for a, b in itertools.combinations(faces, 2) if a & b} - faces
        return faces

    @cached_property
    def faces(self) -> tuple[Cell, ...]:
        """The face closure, sorted by dimension then vertices."""
        vertex_sets: set[frozenset[IntVector]] = set()
        for cell in self.maximal_cells:
            vertex_sets |= self.face_vertex_sets(cell)
        cells = [Cell.spanned_by(self.polytope, vs) for vs in vertex_sets]
        return tuple(sorted(cells, key=lambda c: (c.dim, c.sorted_vertices)))

    @property
    def used_points(self) -> tuple[IntVector, ...]:
        used: set[IntVector] = set()
        for cell in self.maximal_cells:
            used |= cell.vertices
        return tuple(sorted(used))

    @property
    def unused_points(self) -> tuple[IntVector, ...]:
        """``I_∅``: lattice points that are not a vertex of any cell."""
        used = set(self.used_points)
        return tuple(p for p in self.polytope.points if p not in used)

    @property
    def is_triangulation(self) -> bool:
        return all(cell.is_simplex for cell in self.maximal_cells)

    @cached_property
    def interior_walls(self) -> tuple[Wall, ...]:
        walls = []
        g = self.polytope.dim
        for first, second in itertools.combinations(self.maximal_cells, 2):
            common = first.vertices & second.vertices
            if len(common) < g:
                continue
            cell = Cell.spanned_by(self.polytope, common)
            if cell.dim == g - 1:
                walls.append(Wall(cell, (first, second)))
        return tuple(walls)

    def carrier(self, point: Sequence[int]) -> Cell:
        """The unique cell containing ``point`` in its relative interior."""
        lifted = self.polytope.embed(point)
        for cell in self.faces:
            if cell.cone.in_interior(lifted):
                return cell
        raise InvalidPaving(f"{tuple(point)} is not in the polytope")

    def star(self, cell: Cell) -> list[Cell]:
        """Maximal cells containing ``cell``."""
        return [c for c in self.maximal_cells if cell.vertices <= c.vertices]

    def containing(self, point: Sequence[int]) -> Cell:
        """The first maximal cell containing ``point``."""
        lifted = self.polytope.embed(point)
        for cell in self.maximal_cells:
            if cell.cone.contains(lifted):
                return cell
        raise InvalidPaving(f"{tuple(point)} is not in the polytope")

    def refines(self, other: Paving) -> bool:
        """True when every maximal cell lies inside a maximal cell of ``other``."""
        return all(any(o.cone.contains_cone(c.cone) for o in other.maximal_cells) for c in self.maximal_cells)

    def indices(self, cell: Cell) -> list[int]:
        """Vertex indices of ``cell`` into the sorted lattice points."""
        return [self.polytope.index(v) for v in cell.sorted_vertices]

    def cell_indices(self) -> list[list[int]]:
        return [self.indices(cell) for cell in self.maximal_cells]
