"""Linearisation of affine lattices and the graded monoid of a polytope.

Points of the affine lattice ``X̄ ≅ Z^g`` embed at height one in the
linearised lattice ``XX = Z^g ⊕ Z``. With the origin ``o`` fixed at the
lexicographically first vertex, a graded point ``(q, n)`` has coordinates
``(n (q - o), n)`` and a degree-0 element ``(v, 0)`` has coordinates
``(v, 0)``; addition in these coordinates is plain vector addition.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING

from gkz_mori.kernel.cones import RationalCone
from gkz_mori.kernel.linalg import IntVector, Scalar, Vector, dot, vector

if TYPE_CHECKING:
    from gkz_mori.pavings.functions import PiecewiseAffineFn
    from gkz_mori.pavings.polytope import LatticePolytope

logger = logging.getLogger(__name__)

__all__ = [
    "AmbientLattice",
    "GradedPoint",
    "LinearizedFn",
    "cone_over",
    "linearize",
    "ll_add",
    "ll_scale",
    "s_of_q",
    "slice_check",
]

LINEARISED_LATTICE = "XX"


@dataclass(frozen=True, order=True)
class GradedPoint:
    """An element ``(point, degree)`` of the linearised lattice.

    For ``degree != 0`` the point is a rational point of ``X̄``; for
    ``degree == 0`` it is a vector of ``X``.
    """

    degree: Fraction
    point: Vector

    @classmethod
    def of(cls, point: Sequence[Scalar], degree: Scalar = 1) -> GradedPoint:
        return cls(Fraction(degree), vector(point))

    @property
    def is_vector(self) -> bool:
        return self.degree == 0


@dataclass(frozen=True)
class AmbientLattice:
    """The lattices ``X``, ``X̄`` and ``XX`` of rank ``g`` with an explicit origin."""

    g: int
    origin: IntVector

    def embed(self, q: Sequence[Scalar]) -> Vector:
        """``XX`` coordinates of a point of ``X̄`` at degree one."""
        return self.coordinates(GradedPoint.of(q))

    def coordinates(self, p: GradedPoint) -> Vector:
        if p.is_vector:
            return p.point + (Fraction(0),)
        return tuple(p.degree * (x - o) for x, o in zip(p.point, self.origin)) + (p.degree,)

    def graded(self, v: Sequence[Scalar]) -> GradedPoint:
        """Inverse of :meth:`coordinates`."""
        w = vector(v)
        n = w[-1]
        if n == 0:
            return GradedPoint(n, w[:-1])
        return GradedPoint(n, tuple(x / n + o for x, o in zip(w[:-1], self.origin)))

    @staticmethod
    def degree(v: Sequence[Scalar]) -> Fraction:
        """The degree covector ``(0, ..., 0, 1)`` evaluated on ``v``."""
        return Fraction(v[-1])


def ll_add(a: GradedPoint, b: GradedPoint) -> GradedPoint:
    """Addition in the linearised lattice, branch by branch."""
    t, s = a.degree, b.degree
    if len(a.point) != len(b.point):
        raise ValueError("graded points of different ranks")
    if t != 0 and s != 0:
        if t + s != 0:
            total = t + s
            return GradedPoint(total, tuple((t * p + s * q) / total for p, q in zip(a.point, b.point)))
        return GradedPoint(Fraction(0), tuple(t * (p - q) for p, q in zip(a.point, b.point)))
    if t != 0:
        return GradedPoint(t, tuple(v / t + p for p, v in zip(a.point, b.point)))
    if s != 0:
        return GradedPoint(s, tuple(v / s + q for v, q in zip(a.point, b.point)))
    return GradedPoint(Fraction(0), tuple(v + w for v, w in zip(a.point, b.point)))


def ll_scale(a: GradedPoint, k: int) -> GradedPoint:
    """Integer multiple ``k·a``."""
    if k == 0:
        return GradedPoint(Fraction(0), tuple(Fraction(0) for _ in a.point))
    if a.is_vector:
        return GradedPoint(Fraction(0), tuple(k * v for v in a.point))
    return GradedPoint(k * a.degree, a.point)


def _vertices_and_origin(polytope: LatticePolytope | Sequence[Sequence[int]]) -> tuple[list[IntVector], IntVector]:
    if hasattr(polytope, "vertices"):
        return list(polytope.vertices), polytope.origin
    points = sorted(tuple(int(x) for x in p) for p in polytope)
    return points, points[0]


def cone_over(polytope: LatticePolytope | Sequence[Sequence[int]]) -> RationalCone:
    """The cone ``C(Q)`` in ``XX`` spanned by the height-one vertices.

    Accepts a :class:`~gkz_mori.pavings.polytope.LatticePolytope` or a
    bare list of lattice points (which need not be full-dimensional).
    """
    vertices, origin = _vertices_and_origin(polytope)
    lattice = AmbientLattice(len(origin), origin)
    return RationalCone.from_generators(
        [lattice.embed(v) for v in vertices], dim=len(origin) + 1, lattice=LINEARISED_LATTICE
    )


def s_of_q(polytope: LatticePolytope, max_degree: int) -> list[GradedPoint]:
    """Graded points of ``S(Q)`` up to ``max_degree``, sorted by degree then point.

    The degree-``d`` slice consists of ``z / d`` for the lattice points
    ``z`` of the dilation ``d·Q``; degree 0 contributes only the zero vector.
    """
    g = polytope.dim
    lattice = AmbientLattice(g, polytope.origin)
    cone = polytope.cone
    low = [min(v[j] for v in polytope.vertices) for j in range(g)]
    high = [max(v[j] for v in polytope.vertices) for j in range(g)]
    points = [GradedPoint(Fraction(0), tuple(Fraction(0) for _ in range(g)))]
    for d in range(1, max_degree + 1):
        layer = []
        for z in itertools.product(*(range(d * lo, d * hi + 1) for lo, hi in zip(low, high))):
            shifted = tuple(x - d * o for x, o in zip(z, lattice.origin)) + (d,)
            if cone.contains(shifted):
                layer.append(GradedPoint(Fraction(d), tuple(Fraction(x, d) for x in z)))
        points.extend(sorted(layer))
    logger.debug("S(Q) truncated at degree %d has %d elements", max_degree, len(points))
    return points


def slice_check(polytope: LatticePolytope, max_degree: int) -> bool:
    """Compare ``S(Q)`` with the lattice points of ``C(Q)`` slice by slice.

    The lattice points of the cone at height ``d`` are enumerated from the
    cone generators (nonnegative combinations with total height ``d``
    bound the search box) and mapped back through the embedding.
    """
    lattice = AmbientLattice(polytope.dim, polytope.origin)
    graded = {lattice.coordinates(p) for p in s_of_q(polytope, max_degree)}
    rays = polytope.cone.generators
    for d in range(max_degree + 1):
        low = [d * min(r[j] for r in rays) for j in range(polytope.dim)]
        high = [d * max(r[j] for r in rays) for j in range(polytope.dim)]
        for y in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(low, high))):
            v = vector(y + (d,))
            if polytope.cone.contains(v) and v not in graded:
                return False
    return True


@dataclass(frozen=True)
class LinearPiece:
    """A linear map ``XX -> Q^k`` valid on one cone."""

    domain: RationalCone
    covectors: tuple[Vector, ...]


@dataclass(frozen=True)
class LinearizedFn:
    """Piecewise linear function on ``C(Q)`` obtained from a piecewise affine one."""

    lattice: AmbientLattice
    pieces: tuple[LinearPiece, ...]
    scalar: bool

    def __call__(self, v: Sequence[Scalar] | GradedPoint) -> Fraction | Vector:
        coordinates = self.lattice.coordinates(v) if isinstance(v, GradedPoint) else vector(v)
        for piece in self.pieces:
            if piece.domain.contains(coordinates):
                values = tuple(dot(c, coordinates) for c in piece.covectors)
                return values[0] if self.scalar else values
        raise ValueError(f"{tuple(coordinates)} is outside the cone of the function")


def linearize(function: PiecewiseAffineFn) -> LinearizedFn:
    """Homogenise a piecewise affine function ``φ`` on ``Q``.

    On a piece where ``φ(x) = M x + b`` the linear function is
    ``(y, n) ↦ M y + n (M o + b)``, so ``φ̃(q, n) = n φ(q)`` for ``n > 0``
    and ``φ̃(v, 0) = M v`` on degree-0 vectors.
    """
    lattice = AmbientLattice(function.polytope.dim, function.polytope.origin)
    pieces = []
    for piece in function.pieces:
        rows = []
        for row, b in zip(piece.affine.linear, piece.affine.constant):
            rows.append(tuple(row) + (dot(row, lattice.origin) + b,))
        pieces.append(LinearPiece(piece.domain, tuple(rows)))
    return LinearizedFn(lattice, tuple(pieces), function.scalar)
