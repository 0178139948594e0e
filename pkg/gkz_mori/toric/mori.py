"""Mori chambers and the moving cone read off the secondary fan.

A lift ``D`` in the interior of ``C̃(T)`` is a divisor on the toric
variety of ``T``. Its polyhedron ``P_D = {m : m(ω) + D(ω) >= 0}`` in the
space of affine functions has one vertex per maximal simplex exactly when
``D`` induces ``T``; discarding the unused points must not change it.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from gkz_mori.errors import GkzError, NotInterior
from gkz_mori.kernel.cones import RationalCone
from gkz_mori.kernel.linalg import IntVector, Scalar, Vector, dot, solve, vector
from gkz_mori.pavings.paving import Paving
from gkz_mori.pavings.polytope import LatticePolytope
from gkz_mori.pavings.subdivision import regular_subdivision
from gkz_mori.secondary.chambers import GkzChamber, gkz_cone
from gkz_mori.secondary.fan import SecondaryFan

logger = logging.getLogger(__name__)

__all__ = ["MoriVerdict", "MovingCone", "divisor_polyhedron_vertices", "mori_chamber_check", "moving_cone"]


@dataclass(frozen=True)
class MoriVerdict:
    """Result of :func:`mori_chamber_check` with the data behind it.

    Attributes:
        verdict: All checks passed.
        induced: The regular subdivision induced by ``D``.
        same_subdivision: ``induced`` equals the triangulation.
        unused_values: ``D(ω) - g_{D,T}(ω)`` for every unused point.
        pd_vertices: Vertices of ``P_D`` (all lattice points).
        pe_vertices: Vertices of ``P_E`` (vertices of ``T`` only).
        cell_vertices: ``-A_σ`` for each maximal simplex, ``A_σ`` interpolating ``D``.
    """

    verdict: bool
    induced: Paving
    same_subdivision: bool
    unused_values: tuple[Fraction, ...]
    pd_vertices: tuple[Vector, ...]
    pe_vertices: tuple[Vector, ...]
    cell_vertices: tuple[Vector, ...]


def divisor_polyhedron_vertices(
    polytope: LatticePolytope, divisor: Sequence[Scalar], points: Sequence[IntVector]
) -> tuple[Vector, ...]:
    """Vertices of ``{m : m·(ω - o, 1) + D(ω) >= 0 for ω in points}``.

    Computed as the rays with positive last coordinate of the
    homogenisation ``{(m, t) : m·(ω - o, 1) + t D(ω) >= 0, t >= 0}``.
    """
    k = polytope.dim + 1
    heights = dict(zip(polytope.points, vector(divisor)))
    rows = [tuple(polytope.embed(p)) + (heights[p],) for p in points]
    rows.append(tuple(Fraction(0) for _ in range(k)) + (Fraction(1),))
    cone = RationalCone.from_inequalities(rows, dim=k + 1)
    if cone.lineality:
        raise GkzError("divisor polyhedron is not pointed")
    found = {tuple(Fraction(x, g[-1]) for x in g[:-1]) for g in cone.generators if g[-1] > 0}
    return tuple(sorted(found))


def _cell_function(polytope: LatticePolytope, vertices: Sequence[IntVector], heights: dict) -> Vector:
    rows = [polytope.embed(v) for v in vertices]
    covector = solve(rows, [heights[v] for v in vertices], polytope.dim + 1)
    if covector is None:
        raise GkzError(f"cell {list(vertices)} is degenerate")
    return covector


def mori_chamber_check(
    polytope: LatticePolytope,
    triangulation: Paving,
    divisor: Sequence[Scalar],
    chamber: GkzChamber | None = None,
) -> MoriVerdict:
    """Check that the divisor ``D`` is a Mori-chamber divisor for ``T``.

    The verdict holds when ``D`` induces ``T``, is strictly positive on the
    unused points after subtracting ``g_{D,T}``, and ``P_D`` equals ``P_E``
    with vertex set ``{-A_σ}``.

    Raises:
        NotInterior: If ``D`` lies on a defining hyperplane of ``C̃(T)``.
        NotATriangulation: If ``triangulation`` has a non-simplicial cell.
    """
    if len(divisor) != polytope.n_points:
        raise GkzError(f"expected {polytope.n_points} divisor coefficients, got {len(divisor)}")
    chamber = chamber or gkz_cone(triangulation)
    values = [dot(i.covector, divisor) for i in chamber.inequalities]
    if any(v == 0 for v in values):
        raise NotInterior(f"{tuple(divisor)} lies on a wall of the chamber")

    heights = dict(zip(polytope.points, vector(divisor)))
    induced = regular_subdivision(polytope, divisor)
    same = induced == triangulation

    functions = {
        cell: _cell_function(polytope, cell.sorted_vertices, heights) for cell in triangulation.maximal_cells
    }
    unused = []
    for point in triangulation.unused_points:
        a = functions[triangulation.containing(point)]
        unused.append(heights[point] - dot(a, polytope.embed(point)))

    pd = divisor_polyhedron_vertices(polytope, divisor, polytope.points)
    pe = divisor_polyhedron_vertices(polytope, divisor, triangulation.used_points)
    cells = tuple(sorted({tuple(-x for x in a) for a in functions.values()}))
    verdict = same and all(u > 0 for u in unused) and pd == pe and pe == cells
    logger.debug(
        "mori check of %s: induced=%s unused=%s |P_D|=%d |P_E|=%d -> %s",
        triangulation.cell_indices(),
        same,
        unused,
        len(pd),
        len(pe),
        verdict,
    )
    return MoriVerdict(verdict, induced, same, tuple(unused), pd, pe, cells)


@dataclass(frozen=True)
class MovingCone:
    """The union of chambers of triangulations using every lattice point.

    Attributes:
        cone: Convex hull of those chambers in ``L*``.
        chambers: Indices of the contributing chambers in the fan.
        overlaps: Other chambers whose interior meets the hull.
    """

    cone: RationalCone
    chambers: tuple[int, ...]
    overlaps: tuple[int, ...]

    @property
    def convex(self) -> bool:
        """The hull meets no other chamber in full dimension, so it equals the union."""
        return not self.overlaps


def moving_cone(fan: SecondaryFan) -> MovingCone:
    """Union of the chambers ``C(T)`` with ``I_∅ = ∅`` and its convexity certificate."""
    r = fan.context.rank
    selected = tuple(i for i, c in enumerate(fan.chambers) if not c.unused_points)
    generators = [g for i in selected for g in fan.chambers[i].cone.generators]
    lines = [l for i in selected for l in fan.chambers[i].cone.lineality]
    hull = RationalCone.from_generators(generators, lines, dim=r, lattice="L*")
    overlaps = tuple(
        i
        for i, c in enumerate(fan.chambers)
        if i not in selected and hull.intersection(c.cone).dimension == r
    )
    if overlaps:
        logger.warning("moving cone hull overlaps chambers %s", list(overlaps))
    logger.info("moving cone from %d of %d chambers", len(selected), len(fan.chambers))
    return MovingCone(hull, selected, overlaps)
