"""The section ``ϑ = Σ_ω z^{(ω, Ψ(ω))}`` over a chamber and its stability."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from gkz_mori.kernel.cones import dual_cone
from gkz_mori.kernel.linalg import IntVector, Vector
from gkz_mori.pavings.functions import interpolate
from gkz_mori.pavings.paving import Paving
from gkz_mori.secondary.chambers import gkz_cone
from gkz_mori.secondary.lattice import LatticeLContext, PsiMap, psi_map

logger = logging.getLogger(__name__)

__all__ = ["ThetaSection", "theta_section"]


@dataclass(frozen=True)
class ThetaSection:
    """Coefficient exponents of the theta section on the chart of a triangulation.

    Attributes:
        triangulation: The chamber's triangulation ``T``.
        points: The lattice points ``I`` in order.
        exponents: ``Ψ(ω) - g_{Ψ,T}(ω)`` in coordinates of the Hermite basis of ``L``.
        zero: Whether each exponent vanishes.
        consistent: Exponents vanish exactly on the points ``T`` uses.
        above_zero: Every exponent lies in ``C(T)^∨``.
    """

    triangulation: Paving
    points: tuple[IntVector, ...]
    exponents: tuple[Vector, ...]
    zero: tuple[bool, ...]
    consistent: bool
    above_zero: bool

    @property
    def stable(self) -> bool:
        """All used points have unit coefficients."""
        used = set(self.triangulation.used_points)
        return all(z for p, z in zip(self.points, self.zero) if p in used)


def theta_section(
    triangulation: Paving, psi: PsiMap | None = None, context: LatticeLContext | None = None
) -> ThetaSection:
    """Exponents of ``ϑ`` relative to the interpolation ``g_{Ψ,T}``.

    Raises:
        NotATriangulation: If ``triangulation`` has a non-simplicial cell.
        NoRegularSimplex: If ``psi`` is omitted and ``Q`` has no regular simplex.
    """
    polytope = triangulation.polytope
    context = context or LatticeLContext.build(polytope)
    psi = psi or psi_map(polytope, context=context)
    g = interpolate(triangulation, list(psi.coordinates))
    exponents = tuple(
        tuple(a - b for a, b in zip(own, g.value(point))) for own, point in zip(psi.coordinates, polytope.points)
    )
    zero = tuple(not any(e) for e in exponents)
    used = set(triangulation.used_points)
    consistent = all(z == (p in used) for p, z in zip(polytope.points, zero))
    dual = dual_cone(gkz_cone(triangulation, context).cone)
    above_zero = all(dual.contains(e) for e in exponents)
    if not consistent:
        logger.warning("theta exponents do not vanish exactly on the used points")
    logger.debug("theta section: %d zero exponents of %d", sum(zero), len(zero))
    return ThetaSection(triangulation, polytope.points, exponents, zero, consistent, above_zero)
