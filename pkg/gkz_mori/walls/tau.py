"""The lattice ``L_τ`` and monoid ``S_τ`` attached to a wall."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from gkz_mori.errors import GkzError
from gkz_mori.kernel.cones import RationalCone, dual_cone
from gkz_mori.kernel.linalg import Scalar, Vector, determinant, primitive, solve, transpose, vec_mat
from gkz_mori.kernel.normal_forms import rational_lattice_basis, saturation_basis
from gkz_mori.secondary.chambers import gkz_cone
from gkz_mori.toric.fan_data import ToricFanData

logger = logging.getLogger(__name__)

__all__ = ["TauContext", "tau_context"]


@dataclass(frozen=True)
class TauContext:
    """Integral data of the wall between two chambers.

    All vectors are in coordinates of the Hermite basis of ``L``.

    Attributes:
        basis: Basis of ``L_τ = L_{T₁} + L_{T₂}``.
        indices: ``[L_τ : L_{T₁}]`` and ``[L_τ : L_{T₂}]``.
        cone: ``C(T₁)^∨ + C(T₂)^∨``.
        units: Basis of the unit group of ``S_τ``, the lineality lattice.
    """

    basis: tuple[Vector, ...]
    indices: tuple[int, int]
    cone: RationalCone
    units: tuple[Vector, ...]

    def coordinates(self, v: Sequence[Scalar]) -> Vector:
        """Coordinates of ``v`` in :attr:`basis`."""
        return _coordinates(v, self.basis)

    def in_lattice(self, v: Sequence[Scalar]) -> bool:
        return all(x.denominator == 1 for x in self.coordinates(v))

    def in_monoid(self, v: Sequence[Scalar]) -> bool:
        """Membership in ``S_τ = cone ∩ L_τ``."""
        return self.cone.contains(v) and self.in_lattice(v)

    def primitive_form(self, v: Sequence[Scalar]) -> tuple[Fraction, Vector]:
        """``(c, u)`` with ``v = c·u`` and ``u`` primitive in ``L_τ``."""
        coords = self.coordinates(v)
        direction = primitive(coords)
        pivot = next(i for i, x in enumerate(direction) if x != 0)
        u = vec_mat(direction, self.basis, len(self.basis))
        return coords[pivot] / direction[pivot], u


def _coordinates(v: Sequence[Scalar], basis: Sequence[Vector]) -> Vector:
    r = len(basis)
    coords = solve(transpose(basis, r), v, r)
    if coords is None:
        raise GkzError(f"{tuple(v)} is outside the lattice sum")
    return coords


def _index(sub: Sequence[Vector], basis: Sequence[Vector]) -> int:
    rows = [_coordinates(v, basis) for v in sub]
    return abs(int(determinant(rows))) if rows else 1


def tau_context(first: ToricFanData, second: ToricFanData) -> TauContext:
    """Build ``L_τ``, its indices over the two chamber lattices, and ``S_τ``."""
    context = first.context
    r = context.rank
    basis = tuple(rational_lattice_basis(list(first.l_p_basis) + list(second.l_p_basis), r))
    indices = (_index(first.l_p_basis, basis), _index(second.l_p_basis, basis))
    one = dual_cone(gkz_cone(first.paving, context).cone)
    two = dual_cone(gkz_cone(second.paving, context).cone)
    cone = one.sum(two)
    units: tuple[Vector, ...] = ()
    if cone.lineality:
        local = [primitive(_coordinates(l, basis)) for l in cone.lineality]
        units = tuple(vec_mat(u, basis, r) for u in saturation_basis(local, r))
    logger.debug("L_tau indices %s, %d unit generators", indices, len(units))
    return TauContext(basis, indices, cone, units)
