"""Piecewise affine functions on pavings and their bending parameters.

Functions may take scalar values or values in ``Q^k``. Every piece
carries its domain as a cone in the linearised lattice, which lets
functions living on a common refinement of two pavings (whose cells need
not be lattice polytopes) share the same code.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from gkz_mori.errors import InvalidPaving, NotATriangulation
from gkz_mori.kernel.cones import RationalCone
from gkz_mori.kernel.linalg import IntVector, Scalar, Vector, canonical_sign, dot, primitive, solve, vector
from gkz_mori.pavings.paving import Cell, Paving
from gkz_mori.pavings.polytope import LatticePolytope

logger = logging.getLogger(__name__)

__all__ = [
    "AffineMap",
    "AffinePiece",
    "BendingData",
    "PiecewiseAffineFn",
    "bending_parameters",
    "difference",
    "interpolate",
    "piecewise_from_values",
]

Values = Sequence[Scalar] | Sequence[Sequence[Scalar]]


@dataclass(frozen=True)
class AffineMap:
    """``x ↦ M x + b`` from ``X̄`` (absolute coordinates) to ``Q^k``."""

    linear: tuple[Vector, ...]
    constant: Vector

    @classmethod
    def zero(cls, g: int, k: int) -> AffineMap:
        return cls(tuple(tuple(Fraction(0) for _ in range(g)) for _ in range(k)), tuple(Fraction(0) for _ in range(k)))

    def __call__(self, x: Sequence[Scalar]) -> Vector:
        return tuple(dot(row, x) + b for row, b in zip(self.linear, self.constant))

    def __add__(self, other: AffineMap) -> AffineMap:
        return AffineMap(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.linear, other.linear)),
            tuple(a + b for a, b in zip(self.constant, other.constant)),
        )

    def __neg__(self) -> AffineMap:
        return AffineMap(tuple(tuple(-a for a in r) for r in self.linear), tuple(-b for b in self.constant))

    def __sub__(self, other: AffineMap) -> AffineMap:
        return self + (-other)

    def scaled(self, c: Scalar) -> AffineMap:
        return AffineMap(tuple(tuple(c * a for a in r) for r in self.linear), tuple(c * b for b in self.constant))

    def compose(self, covector: Sequence[Scalar]) -> AffineMap:
        """Apply a linear functional on ``Q^k`` after this map."""
        g = len(self.linear[0]) if self.linear else 0
        row = tuple(sum((Fraction(c) * r[j] for c, r in zip(covector, self.linear)), Fraction(0)) for j in range(g))
        return AffineMap((row,), (dot(covector, self.constant),))

    @property
    def is_zero(self) -> bool:
        return not any(self.constant) and not any(any(r) for r in self.linear)


@dataclass(frozen=True)
class AffinePiece:
    """One affine region of a piecewise affine function."""

    domain: RationalCone
    affine: AffineMap
    cell: Cell | None = None


@dataclass(frozen=True)
class PiecewiseAffineFn:
    """A continuous piecewise affine function on ``Q``.

    Attributes:
        polytope: The domain ``Q``.
        pieces: Affine regions; their domains are full-dimensional cones in
            the linearised lattice covering ``C(Q)``.
        paving: The paving the pieces come from, if any.
        target_dim: ``k`` for values in ``Q^k``.
        scalar: When true, evaluation returns a single ``Fraction``.
    """

    polytope: LatticePolytope
    pieces: tuple[AffinePiece, ...]
    paving: Paving | None
    target_dim: int
    scalar: bool = True

    def value(self, x: Sequence[Scalar]) -> Vector:
        lifted = self.polytope.embed(x)
        for piece in self.pieces:
            if piece.domain.contains(lifted):
                return piece.affine(x)
        raise ValueError(f"{tuple(x)} is outside the polytope")

    def __call__(self, x: Sequence[Scalar]) -> Fraction | Vector:
        values = self.value(x)
        return values[0] if self.scalar else values

    def _combine(self, other: PiecewiseAffineFn, op: Callable[[AffineMap, AffineMap], AffineMap]) -> PiecewiseAffineFn:
        if self.paving is not None and self.paving == other.paving:
            pieces = tuple(
                AffinePiece(a.domain, op(a.affine, b.affine), a.cell) for a, b in zip(self.pieces, other.pieces)
            )
            return PiecewiseAffineFn(self.polytope, pieces, self.paving, self.target_dim, self.scalar)
        pieces_list = []
        g = self.polytope.dim
        for a, b in itertools.product(self.pieces, other.pieces):
            meet = a.domain.intersection(b.domain)
            if meet.dimension == g + 1:
                pieces_list.append(AffinePiece(meet, op(a.affine, b.affine)))
        return PiecewiseAffineFn(self.polytope, tuple(pieces_list), None, self.target_dim, self.scalar)

    def __add__(self, other: PiecewiseAffineFn) -> PiecewiseAffineFn:
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other: PiecewiseAffineFn) -> PiecewiseAffineFn:
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self) -> PiecewiseAffineFn:
        pieces = tuple(AffinePiece(p.domain, -p.affine, p.cell) for p in self.pieces)
        return PiecewiseAffineFn(self.polytope, pieces, self.paving, self.target_dim, self.scalar)

    def compose(self, covector: Sequence[Scalar]) -> PiecewiseAffineFn:
        """Scalar function ``x ↦ covector·φ(x)``."""
        pieces = tuple(AffinePiece(p.domain, p.affine.compose(covector), p.cell) for p in self.pieces)
        return PiecewiseAffineFn(self.polytope, pieces, self.paving, 1, True)

    @property
    def is_affine(self) -> bool:
        first = self.pieces[0].affine
        return all(p.affine == first for p in self.pieces)


def _as_vectors(values: Values) -> tuple[list[Vector], bool]:
    if values and isinstance(values[0], (int, Fraction)):
        return [(Fraction(v),) for v in values], True  # type: ignore[arg-type]
    return [vector(v) for v in values], False  # type: ignore[arg-type]


def _fit(points: Sequence[IntVector], targets: Sequence[Vector], g: int) -> AffineMap | None:
    """Affine map taking ``points[i]`` to ``targets[i]``, or ``None`` if impossible."""
    rows = [tuple(p) + (1,) for p in points]
    linear, constant = [], []
    for j in range(len(targets[0])):
        solution = solve(rows, [t[j] for t in targets], g + 1)
        if solution is None:
            return None
        linear.append(solution[:g])
        constant.append(solution[g])
    return AffineMap(tuple(linear), tuple(constant))


def piecewise_from_values(paving: Paving, values: Values) -> PiecewiseAffineFn:
    """The ``paving``-piecewise affine function with given values on ``I``.

    Args:
        paving: The paving on whose cells the function is affine.
        values: One value (scalar or vector) per lattice point of ``Q``,
            in the order of ``paving.polytope.points``. Only the values at
            cell vertices are read.

    Raises:
        InvalidPaving: If the values are not affine on some cell.
    """
    polytope = paving.polytope
    vectors, scalar = _as_vectors(values)
    if len(vectors) != polytope.n_points:
        raise ValueError(f"expected {polytope.n_points} values, got {len(vectors)}")
    by_point = dict(zip(polytope.points, vectors))
    pieces = []
    for cell in paving.maximal_cells:
        vertices = cell.sorted_vertices
        affine = _fit(vertices, [by_point[v] for v in vertices], polytope.dim)
        if affine is None:
            raise InvalidPaving(f"values are not affine on cell {cell.sorted_vertices}")
        pieces.append(AffinePiece(cell.cone, affine, cell))
    return PiecewiseAffineFn(polytope, tuple(pieces), paving, len(vectors[0]), scalar)


def interpolate(paving: Paving, values: Values) -> PiecewiseAffineFn:
    """Affine interpolation ``g_{ψ,T}`` of values at the vertices of a triangulation.

    Raises:
        NotATriangulation: If some maximal cell is not a simplex.
    """
    polytope = paving.polytope
    vectors, scalar = _as_vectors(values)
    if len(vectors) != polytope.n_points:
        raise ValueError(f"expected {polytope.n_points} values, got {len(vectors)}")
    by_point = dict(zip(polytope.points, vectors))
    pieces = []
    for cell in paving.maximal_cells:
        if not cell.is_simplex:
            raise NotATriangulation(f"cell {cell.sorted_vertices} is not a simplex")
        vertices = cell.sorted_vertices
        affine = _fit(vertices, [by_point[v] for v in vertices], polytope.dim)
        if affine is None:
            raise NotATriangulation(f"cell {cell.sorted_vertices} is degenerate")
        pieces.append(AffinePiece(cell.cone, affine, cell))
    return PiecewiseAffineFn(polytope, tuple(pieces), paving, len(vectors[0]), scalar)


def difference(first: PiecewiseAffineFn, second: PiecewiseAffineFn) -> PiecewiseAffineFn:
    """``first - second`` on the common refinement of their pieces."""
    return first - second


@dataclass(frozen=True)
class BendingData:
    """Bending of a function across one interior wall.

    Attributes:
        wall: The wall as a cone in the linearised lattice.
        wall_points: Lattice points of ``Q`` on the wall.
        plus: Index of the piece on the side where ``normal`` is positive.
        minus: Index of the piece on the other side.
        normal: Primitive integral covector on ``X`` vanishing on the wall,
            first nonzero entry positive.
        parameter: ``p`` with ``φ|₊ - φ|₋ = normal ⊗ p``.
        in_monoid: Whether ``p`` lies in the declared monoid.
    """

    wall: RationalCone
    wall_points: tuple[IntVector, ...]
    plus: int
    minus: int
    normal: IntVector
    parameter: Fraction | Vector
    in_monoid: bool


def _nonnegative(p: Vector) -> bool:
    return all(x >= 0 for x in p)


def bending_parameters(
    function: PiecewiseAffineFn, monoid: Callable[[Vector], bool] | None = None
) -> list[BendingData]:
    """One :class:`BendingData` per interior wall between two pieces.

    Args:
        function: The piecewise affine function.
        monoid: Membership test for bending parameters; defaults to the
            nonnegative orthant, i.e. ordinary convexity.
    """
    contains = monoid or _nonnegative
    polytope = function.polytope
    g = polytope.dim
    result = []
    for (i, a), (j, b) in itertools.combinations(enumerate(function.pieces), 2):
        meet = a.domain.intersection(b.domain)
        if meet.dimension != g:
            continue
        (equation,) = meet.equations
        normal = canonical_sign(primitive(equation[:g]))
        scale = next(Fraction(n, e) for n, e in zip(normal, equation) if e != 0)
        covector = tuple(scale * e for e in equation)
        probe = next(r for r in a.domain.generators if dot(covector, r) != 0)
        plus, minus = (a, b) if dot(covector, probe) > 0 else (b, a)
        plus_index, minus_index = (i, j) if plus is a else (j, i)
        x = polytope.lattice.graded(probe).point
        height = dot(covector, polytope.embed(x))
        delta = (plus.affine - minus.affine)(x)
        parameter = tuple(d / height for d in delta)
        wall_points = tuple(p for p in polytope.points if meet.contains(polytope.embed(p)))
        result.append(
            BendingData(
                wall=meet,
                wall_points=wall_points,
                plus=plus_index,
                minus=minus_index,
                normal=normal,
                parameter=parameter[0] if function.scalar else parameter,
                in_monoid=contains(parameter),
            )
        )
    logger.debug("computed %d bending parameters", len(result))
    return result
