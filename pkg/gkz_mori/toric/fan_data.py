"""Fan data of the toric variety attached to a paving.

The cones over the cells of a paving ``P`` form a fan ``Σ_P`` in ``XX``.
Its divisor theory is read off the lattice of integral ``P``-piecewise
affine functions, ``PA(P, Z) ⊂ Z^I``: a function is recorded by its
values on all lattice points of ``Q``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from gkz_mori.errors import GkzError, NotATriangulation
from gkz_mori.kernel.cones import RationalCone, dual_cone
from gkz_mori.kernel.hilbert import hilbert_basis
from gkz_mori.kernel.linalg import (
    IntVector,
    Vector,
    affine_coordinates,
    determinant,
    dot,
    inverse,
    nullspace,
    rank,
    transpose,
)
from gkz_mori.kernel.normal_forms import (
    cokernel_invariants,
    index_in_saturation,
    integer_kernel,
    lattice_basis,
)
from gkz_mori.pavings.functions import bending_parameters, interpolate
from gkz_mori.pavings.paving import Cell, Paving, Wall
from gkz_mori.pavings.subdivision import is_coherent
from gkz_mori.secondary.lattice import LatticeLContext

logger = logging.getLogger(__name__)

__all__ = [
    "CurveClass",
    "ToricFanData",
    "build_fan_data",
    "eff_curve_cone",
    "is_relative_minimal",
    "nef_cone",
    "wall_curve_class",
]

LSTAR = "L*"


@dataclass(frozen=True)
class ToricFanData:
    """The fan ``Σ_P`` with its divisor lattices.

    Attributes:
        paving: The paving ``P``.
        context: Lattice data of ``L`` for the polytope.
        cones: ``C(σ)`` for every cell of ``P``, sorted by dimension.
        rays: Primitive ray generators ``(ω - o, 1)`` for the vertices of ``P``.
        pa_basis: Hermite basis of ``PA(P, Z)`` as value vectors on ``I``.
        pa_index: Index of ``PA(P, Z)`` in its saturation in ``Z^I``.
        class_group: ``(free_rank, torsion)`` of ``Cl = Z^{Σ(1)} / Aff``.
        lstar_p_basis: Basis of ``L*_P = q(PA + Z^{I_∅})`` in ``L*`` coordinates.
        lstar_index: Index of ``L*_P`` in ``L*`` (zero when not of full rank).
        l_p_basis: The dual integral structure ``L_P`` on ``L ⊗ Q``, in
            coordinates of the Hermite basis of ``L``.
    """

    paving: Paving
    context: LatticeLContext
    cones: tuple[RationalCone, ...]
    rays: tuple[IntVector, ...]
    pa_basis: tuple[IntVector, ...]
    pa_index: int
    class_group: tuple[int, tuple[int, ...]]
    lstar_p_basis: tuple[IntVector, ...]
    lstar_index: int
    l_p_basis: tuple[Vector, ...]

    @property
    def pa_rank(self) -> int:
        return len(self.pa_basis)

    @property
    def full_rank(self) -> bool:
        return len(self.lstar_p_basis) == self.context.rank

    def ray_points(self) -> tuple[IntVector, ...]:
        """Lattice points of ``Q`` corresponding to the rays."""
        return self.paving.used_points


def _pa_lattice(paving: Paving) -> list[IntVector]:
    """Integral ``P``-piecewise affine functions as values on ``I``.

    One integral covector on ``XX`` per maximal cell; neighbouring cells
    must agree on their common vertices.
    """
    polytope = paving.polytope
    cells = paving.maximal_cells
    k = polytope.dim + 1
    width = k * len(cells)
    equations = []
    for i, first in enumerate(cells):
        for j in range(i + 1, len(cells)):
            for v in sorted(first.vertices & cells[j].vertices):
                row = [0] * width
                lifted = polytope.embed(v)
                for t in range(k):
                    row[i * k + t] = int(lifted[t])
                    row[j * k + t] = -int(lifted[t])
                equations.append(row)
    owner = [cells.index(paving.containing(p)) for p in polytope.points]
    images = []
    for z in integer_kernel(equations, width):
        values = []
        for p, c in zip(polytope.points, owner):
            values.append(int(dot(z[c * k : (c + 1) * k], polytope.embed(p))))
        images.append(tuple(values))
    return lattice_basis(images, polytope.n_points)


def build_fan_data(paving: Paving, context: LatticeLContext | None = None) -> ToricFanData:
    """Assemble ``Σ_P``, ``PA(P, Z)``, the class group and ``L_P``."""
    polytope = paving.polytope
    context = context or LatticeLContext.build(polytope)
    n = polytope.n_points
    cones = tuple(cell.cone for cell in paving.faces if cell.dim >= 0)
    used = paving.used_points
    rays = tuple(tuple(int(x) for x in polytope.embed(p)) for p in used)

    pa = _pa_lattice(paving)
    pa_index = index_in_saturation(pa, n)
    class_group = cokernel_invariants(rays, polytope.dim + 1)

    generators = [tuple(int(x) for x in context.project(f)) for f in pa]
    for point in paving.unused_points:
        unit = [0] * n
        unit[polytope.index(point)] = 1
        generators.append(tuple(int(x) for x in context.project(unit)))
    r = context.rank
    lstar_p = lattice_basis([g for g in generators if any(g)], r) if r else []
    if len(lstar_p) == r:
        lstar_index = abs(int(determinant(lstar_p))) if r else 1
        l_p = tuple(tuple(row) for row in transpose(inverse(lstar_p), r)) if r else ()
    else:
        logger.warning("L*_P has rank %d < %d; keeping the integral structure of L", len(lstar_p), r)
        lstar_index = 0
        l_p = tuple(tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r))
    logger.info(
        "fan data: %d cones, %d rays, PA rank %d (index %d), Cl free rank %d",
        len(cones),
        len(rays),
        len(pa),
        pa_index,
        class_group[0],
    )
    return ToricFanData(
        paving=paving,
        context=context,
        cones=cones,
        rays=rays,
        pa_basis=tuple(pa),
        pa_index=pa_index,
        class_group=class_group,
        lstar_p_basis=tuple(lstar_p),
        lstar_index=lstar_index,
        l_p_basis=l_p,
    )


def _affine_basis(cell: Cell) -> list[IntVector]:
    basis: list[IntVector] = []
    for v in cell.sorted_vertices:
        candidate = basis + [v]
        if rank([tuple(p) + (1,) for p in candidate], len(v) + 1) == len(candidate):
            basis = candidate
    return basis


def _fold(fd: ToricFanData, apex: IntVector, cell: Cell) -> tuple[Fraction, ...]:
    """``e_apex - Σ β_v e_v`` with ``apex`` affinely expressed over a vertex basis of ``cell``."""
    polytope = fd.paving.polytope
    basis = _affine_basis(cell)
    weights = affine_coordinates(apex, basis)
    if weights is None:
        raise GkzError(f"{apex} is outside the affine span of {basis}")
    row = [Fraction(0)] * polytope.n_points
    row[polytope.index(apex)] += 1
    for v, w in zip(basis, weights):
        row[polytope.index(v)] -= w
    return tuple(row)


def nef_cone(fd: ToricFanData) -> RationalCone:
    """Convex ``P``-piecewise affine functions modulo ``Aff``, in ``L*`` coordinates.

    The cone lives in ``q(PA ⊗ R)`` and is cut out there by one fold
    inequality per interior wall.
    """
    context = fd.context
    r = context.rank
    images = [context.project(f) for f in fd.pa_basis]
    equations = nullspace(images, r) if images else [tuple(Fraction(int(i == j)) for j in range(r)) for i in range(r)]
    folds = []
    for wall in fd.paving.interior_walls:
        first, second = wall.cells
        for apex in sorted(second.vertices - wall.cell.vertices):
            folds.append(context.l_coordinates(_fold(fd, apex, first)))
    cone = RationalCone.from_inequalities(folds, equations, dim=r, lattice=LSTAR)
    logger.debug("nef cone: %d folds, dimension %d", len(folds), cone.dimension)
    return cone


def eff_curve_cone(fd: ToricFanData) -> tuple[RationalCone, list[Vector] | None]:
    """The closed cone of effective curves, dual to :func:`nef_cone`.

    Returns:
        The cone in ``L`` coordinates and, when it is pointed and ``L_P``
        has full rank, its Hilbert basis with respect to ``L_P``.
    """
    cone = dual_cone(nef_cone(fd))
    basis = None
    if cone.is_pointed and fd.full_rank:
        basis = hilbert_basis(cone, fd.l_p_basis)
    return cone, basis


@dataclass(frozen=True)
class CurveClass:
    """The class of the torus-invariant curve of an interior wall.

    Attributes:
        covector: The class as a rational element of ``L ⊗ Q ⊂ Q^I``.
        coordinates: The same in the Hermite basis of ``L``.
        wall: Vertices of the wall.
        apexes: Opposite vertices, first on the side of ``cells[0]``.
        mult_wall: Normalised volume of the wall.
        mult_cells: Normalised volumes of the two simplices.
        circuit: The circuit relation with coefficient one at ``apexes[1]``.
    """

    covector: Vector
    coordinates: Vector
    wall: tuple[IntVector, ...]
    apexes: tuple[IntVector, IntVector]
    mult_wall: int
    mult_cells: tuple[int, int]
    circuit: Vector


def wall_curve_class(fd: ToricFanData, wall: Wall) -> CurveClass:
    """``mult(ς) / (mult(σ₂) c_{a₂}) · c`` for the circuit ``c`` of the wall.

    Cross-checked against the bending, at the wall, of the universal
    function of the triangulation (the interpolation of the ``L`` basis
    rows), whose bending parameter is the image of ``c`` in ``L*``.

    Raises:
        NotATriangulation: If the cells around the wall are not simplices.
        GkzError: If the two computations disagree, or if no piece
            boundary of the universal function lies on the wall.
    """
    first, second = wall.cells
    if not (first.is_simplex and second.is_simplex):
        raise NotATriangulation(f"wall {wall.cell.sorted_vertices} is not between simplices")
    (a1,) = first.vertices - wall.cell.vertices
    (a2,) = second.vertices - wall.cell.vertices
    circuit = _fold(fd, a2, first)
    scale = Fraction(wall.cell.mult, second.mult)
    covector = tuple(scale * c for c in circuit)
    coordinates = fd.context.l_coordinates(covector)

    rows = [tuple(Fraction(x) for x in row) for row in transpose(fd.context.l_basis, fd.paving.polytope.n_points)]
    universal = interpolate(fd.paving, rows)
    lifted = [fd.paving.polytope.embed(v) for v in wall.cell.sorted_vertices]
    bending = next(
        (b for b in bending_parameters(universal, monoid=lambda _: True) if all(b.wall.contains(x) for x in lifted)),
        None,
    )
    if bending is None:
        raise GkzError(f"no bending of the universal function lies on wall {wall.cell.sorted_vertices}")
    if tuple(bending.parameter) != fd.context.project(covector):
        raise GkzError(f"curve class {covector} disagrees with bending {bending.parameter}")
    logger.debug("curve class of wall %s: %s", wall.cell.sorted_vertices, coordinates)
    return CurveClass(
        covector=covector,
        coordinates=coordinates,
        wall=tuple(wall.cell.sorted_vertices),
        apexes=(a1, a2),
        mult_wall=wall.cell.mult,
        mult_cells=(first.mult, second.mult),
        circuit=circuit,
    )


def is_relative_minimal(fd: ToricFanData) -> bool:
    """A coherent triangulation using every lattice point of ``Q``."""
    paving = fd.paving
    return paving.is_triangulation and not paving.unused_points and is_coherent(paving).coherent
