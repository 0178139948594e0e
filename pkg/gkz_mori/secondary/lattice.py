"""The lattice ``L`` of affine relations among the points of ``Q`` and the map ``Ψ``.

``p: (Z^I)* -> XX`` sends ``e_ω`` to ``(ω - o, 1)``; its kernel ``L`` is
the lattice of integral affine relations. A lift ``ψ ∈ Q^I`` pairs with
``L``, which gives the quotient map ``q: Q^I -> L*`` whose kernel is the
space of affine functions. Coordinates on ``L*`` are the pairings with
the Hermite basis of ``L``.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from gkz_mori.errors import NoRegularSimplex
from gkz_mori.kernel.linalg import (
    IntVector,
    Scalar,
    Vector,
    affine_coordinates,
    dot,
    inverse,
    mat_vec,
    solve,
    transpose,
    vec_mat,
)
from gkz_mori.kernel.normal_forms import IntMatrix, hermite_smith, left_kernel
from gkz_mori.pavings.polytope import LatticePolytope

logger = logging.getLogger(__name__)

__all__ = ["LatticeLContext", "PsiMap", "find_regular_simplex", "project_to_Lstar", "psi_map"]


@dataclass(frozen=True)
class LatticeLContext:
    """Bases and maps attached to ``0 -> L -> (Z^I)* -> XX``.

    Attributes:
        polytope: The polytope ``Q``.
        p_rows: Row ``ω`` is ``(ω - o, 1)``.
        l_basis: Hermite basis of ``L = ker p``.
        aff_basis: Integral affine functions ``x_1 - o_1, ..., x_g - o_g, 1``
            evaluated on ``I``.
        torsion: Invariant factors ``> 1`` of ``p``; empty exactly when the
            sequence is exact on the right.
    """

    polytope: LatticePolytope
    p_rows: tuple[IntVector, ...]
    l_basis: tuple[IntVector, ...]
    aff_basis: tuple[IntVector, ...]
    torsion: tuple[int, ...]

    @classmethod
    def build(cls, polytope: LatticePolytope) -> LatticeLContext:
        g = polytope.dim
        rows = tuple(tuple(int(x) for x in polytope.embed(w)) for w in polytope.points)
        forms = hermite_smith(IntMatrix.from_rows(rows, g + 1))
        basis = tuple(left_kernel(rows, g + 1))
        aff = tuple(tuple(row[j] for row in rows) for j in range(g + 1))
        torsion = tuple(d for d in forms.invariant_factors if d > 1)
        logger.info("L has rank %d (N=%d, g=%d), torsion %s", len(basis), polytope.n_points, g, torsion or "none")
        return cls(polytope, rows, basis, aff, torsion)

    @property
    def rank(self) -> int:
        return len(self.l_basis)

    @property
    def exact(self) -> bool:
        return not self.torsion

    def project(self, lift: Sequence[Scalar]) -> Vector:
        """``q(ψ)`` in coordinates dual to the basis of ``L``."""
        return tuple(dot(l, lift) for l in self.l_basis)

    def section(self, y: Sequence[Scalar]) -> Vector:
        """A lift ``ψ`` with ``q(ψ) = y`` (the minimal-norm one)."""
        n = self.polytope.n_points
        if not self.l_basis:
            return tuple(Fraction(0) for _ in range(n))
        gram = [[dot(a, b) for b in self.l_basis] for a in self.l_basis]
        return vec_mat(mat_vec(inverse(gram), y), self.l_basis, n)

    def l_coordinates(self, relation: Sequence[Scalar]) -> Vector:
        """Coordinates of an element of ``L ⊗ Q`` in the Hermite basis."""
        coords = solve(transpose(self.l_basis, self.polytope.n_points), relation, self.rank)
        if coords is None:
            raise ValueError(f"{tuple(relation)} is not an affine relation")
        return coords

    def is_relation(self, v: Sequence[Scalar]) -> bool:
        return all(dot(column, v) == 0 for column in self.aff_basis)


def project_to_Lstar(lift: Sequence[Scalar], context: LatticeLContext) -> Vector:
    """Image of a lift in ``L* ⊗ Q``; affine lifts map to zero."""
    return context.project(lift)


def find_regular_simplex(polytope: LatticePolytope) -> tuple[IntVector, ...]:
    """The first ``(g+1)``-subset of ``I`` (lexicographic) whose lifts form a basis of ``XX``.

    Raises:
        NoRegularSimplex: If no such subset exists.
    """
    g = polytope.dim
    for subset in itertools.combinations(polytope.points, g + 1):
        matrix = IntMatrix.from_rows([tuple(int(x) for x in polytope.embed(v)) for v in subset], g + 1)
        if matrix.is_unimodular():
            return subset
    raise NoRegularSimplex(f"no unimodular simplex among the {polytope.n_points} lattice points")


@dataclass(frozen=True)
class PsiMap:
    """``Ψ: I -> L`` relative to a regular simplex ``σ``.

    Attributes:
        simplex: The vertices of ``σ``.
        values: ``Ψ(ω)`` as an integer vector in ``Z^I``, one per point.
        coordinates: ``Ψ(ω)`` in the Hermite basis of ``L``.
    """

    simplex: tuple[IntVector, ...]
    values: tuple[IntVector, ...]
    coordinates: tuple[Vector, ...]

    def pair(self, lift: Sequence[Scalar]) -> Vector:
        """``⟨ψ, Ψ(ω)⟩ = ψ(ω) - L_σ(ψ)(ω)`` for every ``ω``."""
        return tuple(dot(v, lift) for v in self.values)


def psi_map(
    polytope: LatticePolytope, simplex: Sequence[Sequence[int]] | None = None, context: LatticeLContext | None = None
) -> PsiMap:
    """Build ``Ψ`` from the affine extension ``L_σ`` over a regular simplex.

    Raises:
        NoRegularSimplex: If ``simplex`` is omitted and none exists, or if
            the given simplex is not regular.
    """
    if simplex is None:
        chosen = find_regular_simplex(polytope)
    else:
        chosen = tuple(tuple(int(x) for x in v) for v in simplex)
        matrix = IntMatrix.from_rows([tuple(int(x) for x in polytope.embed(v)) for v in chosen], polytope.dim + 1)
        if len(chosen) != polytope.dim + 1 or not matrix.is_unimodular():
            raise NoRegularSimplex(f"{[list(v) for v in chosen]} is not a regular simplex")
    context = context or LatticeLContext.build(polytope)
    index = {p: i for i, p in enumerate(polytope.points)}
    values = []
    for omega in polytope.points:
        weights = affine_coordinates(omega, chosen)
        assert weights is not None
        row = [0] * polytope.n_points
        row[index[omega]] += 1
        for v, w in zip(chosen, weights):
            row[index[v]] -= int(w)
        values.append(tuple(row))
    coordinates = tuple(context.l_coordinates(v) for v in values)
    logger.debug("Psi relative to simplex %s", chosen)
    return PsiMap(chosen, tuple(values), coordinates)
