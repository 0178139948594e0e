"""The monoid ``H_P`` of a paving and the universal piecewise affine function.

Functions in ``PA(P, Z)`` modulo affine ones form the lattice
``N = PA/Aff``, embedded in ``L*`` by ``q``. For graded points ``α, β``
the functional ``α*β: f ↦ f̃(α) + f̃(β) - f̃(α + β)`` vanishes on affine
functions, so it is an element of ``N*``. ``H_P`` is the monoid these
functionals generate; its saturation is dual to the cone of convex
functions.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

from gkz_mori.config import DEFAULT_HP_TRUNCATION
from gkz_mori.errors import GkzError
from gkz_mori.families.monoid import MonoidP
from gkz_mori.graded import GradedPoint, ll_add, s_of_q
from gkz_mori.kernel.cones import RationalCone, dual_cone
from gkz_mori.kernel.hilbert import hilbert_basis
from gkz_mori.kernel.linalg import IntVector, Vector, affine_coordinates, mat_vec, rank, vector
from gkz_mori.kernel.normal_forms import lattice_basis
from gkz_mori.pavings.functions import BendingData, PiecewiseAffineFn, bending_parameters, piecewise_from_values
from gkz_mori.pavings.paving import Cell, Paving
from gkz_mori.secondary.lattice import LatticeLContext
from gkz_mori.toric.fan_data import ToricFanData, build_fan_data, nef_cone

logger = logging.getLogger(__name__)

__all__ = ["HPMonoid", "build_hp", "universal_bending_check", "universal_function"]


@dataclass(frozen=True)
class HPMonoid:
    """``H_P`` with its group and saturation.

    Vectors live in ``N* = Z^s``, coordinates dual to :attr:`n_basis`.

    Attributes:
        paving: The paving ``P``.
        fan_data: Its toric data (``PA(P, Z)`` and ``L`` bases).
        n_basis: Basis of ``N = q(PA(P, Z))`` in ``L*`` coordinates.
        products: ``α*β`` for every pair within the truncation.
        generators: Distinct nonzero products, sorted.
        group_basis: Basis of ``H^gp``.
        cone: The cone spanned by :attr:`generators`.
        saturation: ``C(P, Z)^∨`` computed from the convex-function cone.
        saturation_basis: Hilbert basis of the saturation (sharp case).
    """

    paving: Paving
    fan_data: ToricFanData
    n_basis: tuple[IntVector, ...]
    products: dict[tuple[GradedPoint, GradedPoint], Vector]
    generators: tuple[Vector, ...]
    group_basis: tuple[IntVector, ...]
    cone: RationalCone
    saturation: RationalCone
    saturation_basis: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.n_basis)

    @property
    def sharp(self) -> bool:
        return self.cone.is_pointed

    @property
    def saturated_cone_matches(self) -> bool:
        """``cone(H) = C(P)^∨`` as sets."""
        return self.cone == self.saturation.in_lattice(self.cone.lattice)

    def monoid(self) -> MonoidP:
        """``H^sat`` as a toric monoid for twisted families."""
        return MonoidP(f"H_P^sat({self.rank})", self.saturation, self.saturation_basis)


def _affine_basis(vertices: list[IntVector]) -> list[IntVector]:
    basis: list[IntVector] = []
    for v in vertices:
        candidate = basis + [v]
        if rank([tuple(p) + (1,) for p in candidate], len(v) + 1) == len(candidate):
            basis = candidate
    return basis


def _n_coordinates(context: LatticeLContext, n_basis: tuple[IntVector, ...], covector: tuple[Fraction, ...]) -> Vector:
    """A covector in ``L ⊗ Q`` restricted to ``N``, in the dual basis."""
    kappa = context.l_coordinates(covector)
    return mat_vec(n_basis, kappa)


def _cell_evaluation(paving: Paving, cell: Cell, point: GradedPoint) -> tuple[Fraction, ...]:
    """Covector ``f ↦ Ã(point)`` where ``A`` is the affine function of ``f`` on ``cell``."""
    polytope = paving.polytope
    basis = _affine_basis(cell.sorted_vertices)
    weights = affine_coordinates(point.point, basis)
    row = [Fraction(0)] * polytope.n_points
    for v, w in zip(basis, weights or ()):
        row[polytope.index(v)] += point.degree * w
    return tuple(row)


def _evaluation(paving: Paving, point: GradedPoint) -> tuple[Fraction, ...]:
    """Covector ``f ↦ f̃(point)`` on ``P``-piecewise affine value vectors."""
    if point.degree == 0:
        return tuple(Fraction(0) for _ in paving.polytope.points)
    lifted = paving.polytope.embed(point.point)
    cell = next(c for c in paving.maximal_cells if c.cone.contains(lifted))
    return _cell_evaluation(paving, cell, point)


def build_hp(
    paving: Paving, truncation: int = DEFAULT_HP_TRUNCATION, fan_data: ToricFanData | None = None
) -> HPMonoid:
    """Generators ``α*β``, the group ``H^gp`` and the saturation ``C(P, Z)^∨``."""
    fd = fan_data or build_fan_data(paving)
    context = fd.context
    images = [tuple(int(x) for x in context.project(f)) for f in fd.pa_basis]
    n_basis = tuple(lattice_basis([i for i in images if any(i)], context.rank)) if context.rank else ()
    s = len(n_basis)

    elements = [p for p in s_of_q(paving.polytope, truncation) if p.degree > 0]
    products: dict[tuple[GradedPoint, GradedPoint], Vector] = {}
    for a, b in itertools.combinations_with_replacement(elements, 2):
        if a.degree + b.degree > truncation:
            continue
        total = ll_add(a, b)
        covector = tuple(
            x + y - z for x, y, z in zip(_evaluation(paving, a), _evaluation(paving, b), _evaluation(paving, total))
        )
        products[(a, b)] = _n_coordinates(context, n_basis, covector) if s else ()
    generators = tuple(sorted({p for p in products.values() if any(p)}))
    name = f"N*({s})"
    group = tuple(lattice_basis([tuple(int(x) for x in g) for g in generators], s)) if s else ()
    cone = RationalCone.from_generators(list(generators), dim=s, lattice=name)

    nef = nef_cone(fd)
    # Convex functions in N coordinates: z with zB in the nef cone.
    inequalities = [mat_vec(n_basis, a) for a in nef.inequalities]
    equations = [mat_vec(n_basis, e) for e in nef.equations]
    convex = RationalCone.from_inequalities(inequalities, equations, dim=s, lattice=f"N({s})")
    saturation = dual_cone(convex)
    basis = tuple(hilbert_basis(saturation)) if saturation.is_pointed and s else ()
    logger.info("H_P: %d generators of rank %d, saturation has %d Hilbert basis elements", len(generators), s, len(basis))
    return HPMonoid(paving, fd, n_basis, products, generators, group, cone, saturation, basis)


def universal_function(hp: HPMonoid) -> PiecewiseAffineFn:
    """The universal ``P``-piecewise affine function with values in ``N* ⊗ Q``.

    ``φ(x)`` is the functional ``f ↦ f(x) - A₀(f)(x)`` where ``A₀(f)`` is
    the affine function agreeing with ``f`` on the first maximal cell, so
    ``φ`` vanishes there.
    """
    paving = hp.paving
    context = hp.fan_data.context
    values = []
    for point in paving.polytope.points:
        row = [Fraction(0)] * paving.polytope.n_points
        row[paving.polytope.index(point)] += 1
        base = _cell_evaluation(paving, paving.maximal_cells[0], GradedPoint.of(point))
        covector = tuple(a - b for a, b in zip(row, base))
        values.append(_n_coordinates(context, hp.n_basis, covector))
    return piecewise_from_values(paving, values)


def universal_bending_check(hp: HPMonoid, psi_coordinates: tuple[Vector, ...]) -> list[BendingData]:
    """Bending parameters of :func:`universal_function`, compared with those of ``g_{Ψ,P}``.

    ``Ψ`` is given in coordinates of the Hermite basis of ``L``; its
    bending parameters are restricted to ``N`` before comparison.

    Returns:
        The bending data of the universal function.

    Raises:
        GkzError: If the two sets of bending parameters disagree.
    """
    phi = universal_function(hp)
    reference = piecewise_from_values(hp.paving, list(psi_coordinates))
    ours = bending_parameters(phi, monoid=hp.saturation.contains)
    theirs = bending_parameters(reference, monoid=lambda _: True)
    for mine in ours:
        match = next((t for t in theirs if t.wall == mine.wall), None)
        if match is None:
            raise GkzError(f"no reference bending for the wall through {list(mine.wall_points)}")
        restricted = mat_vec(hp.n_basis, vector(match.parameter))
        if restricted != vector(mine.parameter):
            raise GkzError(f"bending {mine.parameter} differs from the restriction {restricted}")
    return ours

