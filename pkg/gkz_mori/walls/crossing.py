"""Wall crossing between adjacent maximal chambers of the secondary fan.

Two adjacent chambers differ either by inserting one point (a divisorial
wall) or by exchanging the two triangulations of a circuit (a flip). The
difference ``g¹² = g_{Ψ,T₁} - g_{Ψ,T₂}`` of the interpolations of ``Ψ``
is supported on the region where the triangulations differ; its value at
the distinguished point ``ω`` is ``q_τ``.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from gkz_mori.errors import GkzError, NotAdjacent
from gkz_mori.kernel.cones import RationalCone, dual_cone
from gkz_mori.kernel.linalg import IntVector, Scalar, Vector, affine_coordinates, nullspace, rank, vec_mat
from gkz_mori.pavings.functions import PiecewiseAffineFn, interpolate
from gkz_mori.pavings.paving import Cell, Paving
from gkz_mori.pavings.polytope import LatticePolytope
from gkz_mori.pavings.subdivision import regular_subdivision, star_subdivision
from gkz_mori.secondary.chambers import GkzChamber, gkz_cone
from gkz_mori.secondary.lattice import LatticeLContext, PsiMap, psi_map

logger = logging.getLogger(__name__)

__all__ = [
    "Circuit",
    "WallCrossing",
    "WallKind",
    "classify_wall",
    "cocycle_check",
    "cocycle_holds",
    "curve_multiple",
    "g12",
    "half_lattice_points",
    "lineality_spanned_by_q",
    "telescoping_sum",
    "vanishes_outside_star",
]


class WallKind(StrEnum):
    DIVISORIAL = "divisorial"
    FLIPPING = "flipping"


@dataclass(frozen=True)
class Circuit:
    """An oriented circuit ``Σ b_i (v_i, 1) = 0`` with ``Σ_{J₊} b_i = 1``.

    ``J₋`` spans a face of the first triangulation, ``J₊`` one of the second.
    """

    minus: tuple[IntVector, ...]
    plus: tuple[IntVector, ...]
    coefficients: dict[IntVector, Fraction]

    @property
    def omega(self) -> Vector:
        """The common point ``Σ_{J₊} b_i v_i = Σ_{J₋} (-b_i) v_i``."""
        g = len(self.plus[0])
        return tuple(sum((self.coefficients[v] * v[j] for v in self.plus), Fraction(0)) for j in range(g))


@dataclass(frozen=True)
class WallCrossing:
    """Analysis of the wall ``τ = C(T₁) ∩ C(T₂)``.

    Attributes:
        first: ``T₁``.
        second: ``T₂``.
        kind: Divisorial or flipping.
        omega: The inserted point (divisorial) or the circuit point (flip).
        q_tau: ``g¹²(ω)`` in coordinates of the Hermite basis of ``L``.
        closed_form: ``q_τ`` from the barycentric or circuit formula.
        g12: The difference function.
        wall: The common facet ``τ`` in ``L*``.
        wall_paving: The coarser paving induced by the interior of ``τ``.
        circuit: The oriented circuit, for flips.
        sigma_zero: Carrier of ``ω`` in the coarser triangulation, for divisorial walls.
        barycentric: Weights of ``ω`` over the vertices of ``sigma_zero``.
        star_reproduces: The finer triangulation is the star subdivision at ``ω``.
        placement: Membership of ``q_τ`` and ``-q_τ`` in ``C(T₁)^∨`` and
            ``C(T₂)^∨``, keyed ``"+1"``, ``"-1"``, ``"+2"``, ``"-2"``.
        lineality: Basis of the lineality space of ``C(T₁)^∨ + C(T₂)^∨``.
    """

    first: Paving
    second: Paving
    kind: WallKind
    omega: Vector
    q_tau: Vector
    closed_form: Vector
    g12: PiecewiseAffineFn
    wall: RationalCone
    wall_paving: Paving
    circuit: Circuit | None
    sigma_zero: Cell | None
    barycentric: Vector | None
    star_reproduces: bool | None
    placement: dict[str, bool]
    lineality: tuple[IntVector, ...]

    @property
    def sign_consistent(self) -> bool:
        """Exactly one of ``±q_τ`` lies in ``C(T₁)^∨`` and the other in ``C(T₂)^∨``."""
        p = self.placement
        return p["+1"] != p["-1"] and p["+2"] != p["-2"] and p["+1"] == p["-2"]

    @property
    def non_simplicial_cells(self) -> list[Cell]:
        return [c for c in self.wall_paving.maximal_cells if not c.is_simplex]


def g12(
    polytope: LatticePolytope, first: Paving, second: Paving, psi: PsiMap | None = None
) -> PiecewiseAffineFn:
    """``g_{Ψ,T₁} - g_{Ψ,T₂}`` with values in ``L ⊗ Q`` (Hermite coordinates)."""
    psi = psi or psi_map(polytope)
    return interpolate(first, list(psi.coordinates)) - interpolate(second, list(psi.coordinates))


def _circuit(polytope: LatticePolytope, cell: Cell, first: Paving) -> Circuit:
    vertices = cell.sorted_vertices
    rows = [polytope.embed(v) for v in vertices]
    kernel = nullspace([tuple(r[j] for r in rows) for j in range(polytope.dim + 1)], len(rows))
    if len(kernel) != 1:
        raise GkzError(f"cell {vertices} does not carry a single circuit")
    (relation,) = kernel
    total = sum((b for b in relation if b > 0), Fraction(0))
    coefficients = {v: b / total for v, b in zip(vertices, relation) if b != 0}
    minus = tuple(v for v in vertices if coefficients.get(v, 0) < 0)
    if not any(set(minus) <= c.vertices for c in first.maximal_cells):
        coefficients = {v: -b for v, b in coefficients.items()}
        minus = tuple(v for v in vertices if coefficients.get(v, 0) < 0)
    plus = tuple(v for v in vertices if coefficients.get(v, 0) > 0)
    return Circuit(minus, plus, coefficients)


def classify_wall(
    polytope: LatticePolytope,
    first: Paving,
    second: Paving,
    *,
    context: LatticeLContext | None = None,
    psi: PsiMap | None = None,
    chambers: tuple[GkzChamber, GkzChamber] | None = None,
) -> WallCrossing:
    """Classify the wall between two adjacent maximal chambers and compute ``q_τ``.

    Raises:
        NotAdjacent: If the chambers do not meet along a common facet.
        GkzError: If ``q_τ`` disagrees with its closed form or vanishes.
    """
    context = context or LatticeLContext.build(polytope)
    psi = psi or psi_map(polytope, context=context)
    one, two = chambers or (gkz_cone(first, context), gkz_cone(second, context))
    r = context.rank
    wall = one.cone.intersection(two.cone)
    if not (
        wall.dimension == r - 1
        and one.cone.dimension == r
        and two.cone.dimension == r
        and wall.is_face_of(one.cone)
        and wall.is_face_of(two.cone)
    ):
        raise NotAdjacent(f"chambers of {first.cell_indices()} and {second.cell_indices()} are not adjacent")
    wall_paving = regular_subdivision(polytope, context.section(wall.interior_point()))
    difference = g12(polytope, first, second, psi)
    coords = dict(zip(polytope.points, psi.coordinates))

    circuit = sigma_zero = barycentric = star_ok = None
    unused_first, unused_second = set(first.unused_points), set(second.unused_points)
    if unused_first != unused_second:
        kind = WallKind.DIVISORIAL
        changed = unused_first ^ unused_second
        if len(changed) != 1:
            raise NotAdjacent(f"triangulations differ in {len(changed)} used points")
        (point,) = changed
        fine, coarse = (first, second) if point in unused_second else (second, first)
        sigma_zero = coarse.carrier(point)
        barycentric = affine_coordinates(point, sigma_zero.sorted_vertices)
        if barycentric is None:
            raise GkzError(f"{point} is not in the span of its carrier")
        star_ok = star_subdivision(coarse, point) == fine
        omega = tuple(Fraction(x) for x in point)
        average = vec_mat(barycentric, [coords[v] for v in sigma_zero.sorted_vertices], r)
        closed = tuple(a - b for a, b in zip(coords[point], average))
        if fine is second:
            closed = tuple(-x for x in closed)
    else:
        kind = WallKind.FLIPPING
        cells = [c for c in wall_paving.maximal_cells if not c.is_simplex]
        if not cells:
            raise GkzError("flipping wall without a non-simplicial cell")
        circuit = _circuit(polytope, cells[0], first)
        omega = circuit.omega
        closed = tuple(
            -sum((b * coords[v][j] for v, b in circuit.coefficients.items()), Fraction(0)) for j in range(r)
        )
    q_tau = difference.value(omega)
    if q_tau != closed:
        raise GkzError(f"q_tau {q_tau} disagrees with the closed form {closed}")
    if not any(q_tau):
        raise GkzError("q_tau vanishes")

    first_dual, second_dual = dual_cone(one.cone), dual_cone(two.cone)
    together = first_dual.sum(second_dual)
    minus_q = tuple(-x for x in q_tau)
    crossing = WallCrossing(
        first=first,
        second=second,
        kind=kind,
        omega=omega,
        q_tau=q_tau,
        closed_form=closed,
        g12=difference,
        wall=wall,
        wall_paving=wall_paving,
        circuit=circuit,
        sigma_zero=sigma_zero,
        barycentric=barycentric,
        star_reproduces=star_ok,
        placement={
            "+1": first_dual.contains(q_tau),
            "-1": first_dual.contains(minus_q),
            "+2": second_dual.contains(q_tau),
            "-2": second_dual.contains(minus_q),
        },
        lineality=together.lineality,
    )
    logger.info("%s wall at %s, q_tau=%s", kind, [str(x) for x in omega], [str(x) for x in q_tau])
    return crossing


def lineality_spanned_by_q(crossing: WallCrossing) -> bool:
    """The lineality space of ``C(T₁)^∨ + C(T₂)^∨`` is the line through ``q_τ``."""
    lines = crossing.lineality
    return len(lines) == 1 and rank([lines[0], crossing.q_tau], len(crossing.q_tau)) == 1


def half_lattice_points(polytope: LatticePolytope, denominator: int = 2) -> list[Vector]:
    """Points of ``Q`` with coordinates in ``(1/denominator) Z``."""
    scaled = LatticePolytope.from_vertices([tuple(denominator * x for x in v) for v in polytope.vertices])
    return [tuple(Fraction(x, denominator) for x in p) for p in scaled.points]


def _star_region(crossing: WallCrossing) -> list[Cell]:
    kept = set(crossing.second.maximal_cells)
    return [c for c in crossing.first.maximal_cells if c not in kept]


def vanishes_outside_star(crossing: WallCrossing, samples: Sequence[Sequence[Scalar]] | None = None) -> list[Vector]:
    """Sample points outside the region where the triangulations differ at which ``g¹² ≠ 0``.

    An empty list means the support statement holds on every sample.
    """
    polytope = crossing.first.polytope
    points = samples if samples is not None else half_lattice_points(polytope)
    region = _star_region(crossing)
    exceptions = []
    for x in points:
        lifted = polytope.embed(x)
        if any(cell.cone.contains(lifted) for cell in region):
            continue
        if any(crossing.g12.value(x)):
            exceptions.append(tuple(Fraction(v) for v in x))
    if exceptions:
        logger.warning("g12 is nonzero at %d points outside the star region", len(exceptions))
    return exceptions


def cocycle_check(
    polytope: LatticePolytope,
    first: Paving,
    second: Paving,
    third: Paving,
    samples: Sequence[Sequence[Scalar]] | None = None,
    psi: PsiMap | None = None,
) -> bool:
    """``g¹³ = g¹² + g²³`` at every sample point (default: ``Q(1/2)``)."""
    psi = psi or psi_map(polytope)
    points = samples if samples is not None else half_lattice_points(polytope)
    return cocycle_holds(
        g12(polytope, first, second, psi),
        g12(polytope, second, third, psi),
        g12(polytope, first, third, psi),
        points,
    )


def cocycle_holds(
    d12: PiecewiseAffineFn, d23: PiecewiseAffineFn, d13: PiecewiseAffineFn, points: Sequence[Sequence[Scalar]]
) -> bool:
    """``d13 = d12 + d23`` at every point of ``points``."""
    for x in points:
        total = tuple(a + b for a, b in zip(d12.value(x), d23.value(x)))
        if d13.value(x) != total:
            logger.warning("cocycle fails at %s", x)
            return False
    return True


def telescoping_sum(
    polytope: LatticePolytope, path: Sequence[Paving], x: Sequence[Scalar], psi: PsiMap | None = None
) -> Vector:
    """``Σ g^{i,i+1}(x)`` along a path of triangulations."""
    psi = psi or psi_map(polytope)
    total = [Fraction(0)] * len(psi.coordinates[0])
    for a, b in itertools.pairwise(path):
        total = [s + v for s, v in zip(total, g12(polytope, a, b, psi).value(x))]
    return tuple(total)


def curve_multiple(crossing: WallCrossing, curve: Vector) -> Fraction | None:
    """``λ`` with ``q_τ = λ·curve``, or ``None`` if they are not parallel."""
    pivot = next((i for i, c in enumerate(curve) if c != 0), None)
    if pivot is None:
        return None
    scale = crossing.q_tau[pivot] / curve[pivot]
    if tuple(scale * c for c in curve) != crossing.q_tau:
        return None
    return scale
