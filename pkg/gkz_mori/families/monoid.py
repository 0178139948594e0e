"""Twisted graded monoids ``S(Q) ⋊ P`` of piecewise affine functions.

A ``P``-convex function ``φ: Q -> P^gp ⊗ Q`` twists the addition of the
graded monoid ``S(Q)``: the sum of ``(α, p)`` and ``(β, q)`` is
``(α + β, p + q + φ̃(α) + φ̃(β) - φ̃(α + β))`` where ``φ̃`` is the
homogenisation of ``φ``. The correction lies in ``P`` exactly when ``φ``
is ``P``-convex, and the result is isomorphic to the monoid of lattice
points of the epigraph ``Q_φ``.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from gkz_mori.config import DEFAULT_TRUNCATION
from gkz_mori.errors import GkzError, NotConvex, NotMonotone
from gkz_mori.graded import GradedPoint, LinearizedFn, linearize, ll_add, s_of_q
from gkz_mori.kernel.cones import RationalCone
from gkz_mori.kernel.hilbert import hilbert_basis
from gkz_mori.kernel.linalg import Scalar, Vector, dot, vec_mat, vector
from gkz_mori.pavings.functions import AffineMap, AffinePiece, PiecewiseAffineFn, bending_parameters
from gkz_mori.pavings.paving import Paving
from gkz_mori.pavings.polytope import LatticePolytope
from gkz_mori.pavings.subdivision import regular_subdivision

logger = logging.getLogger(__name__)

__all__ = [
    "MonoidP",
    "QPhi",
    "Specialization",
    "TwistedMonoid",
    "q_phi",
    "specialize",
    "theta_multiply",
    "twist_by_affine",
]

Element = tuple[GradedPoint, Vector]


@dataclass(frozen=True)
class MonoidP:
    """A toric monoid ``P = σ_P ∩ Z^k``.

    Attributes:
        name: Label used in reports.
        cone: ``σ_P`` in ``P^gp ⊗ Q = Q^k``.
        generators: The Hilbert basis when ``P`` is sharp.
    """

    name: str
    cone: RationalCone
    generators: tuple[Vector, ...] = field(default=())

    @classmethod
    def natural(cls, rank: int = 1) -> MonoidP:
        """``N^rank``."""
        units = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
        cone = RationalCone.from_generators(units, dim=rank, lattice=f"Z^{rank}")
        return cls(f"N^{rank}", cone, tuple(vector(u) for u in units))

    @classmethod
    def from_cone(cls, name: str, cone: RationalCone) -> MonoidP:
        generators = tuple(hilbert_basis(cone)) if cone.is_pointed else ()
        return cls(name, cone, generators)

    @property
    def rank(self) -> int:
        return self.cone.ambient_dim

    @property
    def sharp(self) -> bool:
        return self.cone.is_pointed

    def contains(self, p: Sequence[Scalar]) -> bool:
        return self.cone.contains(p) and all(Fraction(x).denominator == 1 for x in p)

    def above(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> bool:
        """``u ⪰_P v``: the difference lies in ``σ_P``."""
        return self.cone.contains(tuple(a - b for a, b in zip(u, v)))


def _values(value: Fraction | Vector) -> Vector:
    return (value,) if isinstance(value, Fraction) else tuple(value)


def _check_convex(phi: PiecewiseAffineFn, monoid: MonoidP) -> None:
    for bending in bending_parameters(phi, monoid=monoid.cone.contains):
        if not bending.in_monoid:
            raise NotConvex(
                f"bending parameter {bending.parameter} across the wall through {list(bending.wall_points)} "
                f"is outside {monoid.name}"
            )


@dataclass(frozen=True)
class QPhi:
    """The epigraph ``Q_φ = {(α, h) : h ⪰_P φ(α)}`` as a cone over ``XX ⊕ P^gp``.

    Attributes:
        cone: ``C(Q_φ)``; its lattice points at degree ``n`` are ``S(Q_φ)_n``.
        recession: The directions ``{0} × σ_P`` in degree zero.
    """

    polytope: LatticePolytope
    monoid: MonoidP
    cone: RationalCone
    recession: tuple[Vector, ...]

    def contains(self, alpha: GradedPoint, height: Sequence[Scalar]) -> bool:
        coordinates = self.polytope.lattice.coordinates(alpha)
        return self.cone.contains(tuple(coordinates) + tuple(Fraction(h) for h in height))


def q_phi(polytope: LatticePolytope, phi: PiecewiseAffineFn, monoid: MonoidP) -> QPhi:
    """Half-space description of ``Q_φ``.

    Each piece ``A_σ`` and each facet normal ``u`` of ``σ_P`` contribute
    ``u·(h - Ã_σ(v)) >= 0``; intersecting over all pieces is exact because
    ``φ`` is ``P``-above each of its affine extensions.

    Raises:
        NotConvex: If some bending parameter of ``φ`` is outside ``σ_P``.
    """
    _check_convex(phi, monoid)
    g, k = polytope.dim, monoid.rank
    linear = linearize(phi)
    inequalities = [tuple(a) + (Fraction(0),) * k for a in polytope.cone.inequalities]
    equations = [tuple(Fraction(0) for _ in range(g + 1)) + tuple(e) for e in monoid.cone.equations]
    for piece in linear.pieces:
        for u in monoid.cone.inequalities:
            pulled = vec_mat(u, piece.covectors, g + 1)
            inequalities.append(tuple(-x for x in pulled) + vector(u))
        for e in monoid.cone.equations:
            pulled = vec_mat(e, piece.covectors, g + 1)
            equations.append(tuple(-x for x in pulled) + vector(e))
    cone = RationalCone.from_inequalities(inequalities, equations, dim=g + 1 + k, lattice=f"XX+Z^{k}")
    zero = (Fraction(0),) * (g + 1)
    recession = tuple(zero + tuple(Fraction(x) for x in r) for r in monoid.cone.generators)
    logger.debug("Q_phi: %d half-spaces in dimension %d", len(cone.inequalities), g + 1 + k)
    return QPhi(polytope, monoid, cone, recession)


@dataclass(frozen=True)
class TwistedMonoid:
    """``S(Q) ⋊ P`` for a ``P``-convex integral ``φ``, truncated by degree.

    Attributes:
        polytope: The base polytope ``Q``.
        phi: The twisting function with values in ``P^gp``.
        monoid: ``P``.
        truncation: Largest degree kept.
        elements: Graded points of ``S(Q)`` up to :attr:`truncation`.
    """

    polytope: LatticePolytope
    phi: PiecewiseAffineFn
    monoid: MonoidP
    truncation: int
    elements: tuple[GradedPoint, ...]
    linear: LinearizedFn

    @classmethod
    def build(
        cls, polytope: LatticePolytope, phi: PiecewiseAffineFn, monoid: MonoidP, truncation: int = DEFAULT_TRUNCATION
    ) -> TwistedMonoid:
        """Enumerate ``S(Q)`` up to ``truncation`` after checking convexity.

        Raises:
            NotConvex: If ``φ`` is not ``P``-convex.
        """
        _check_convex(phi, monoid)
        elements = tuple(s_of_q(polytope, truncation))
        return cls(polytope, phi, monoid, truncation, elements, linearize(phi))

    def phi_tilde(self, alpha: GradedPoint) -> Vector:
        """``deg(α)·φ(α)``, extended linearly to degree zero."""
        return _values(self.linear(alpha))

    def add(self, a: Element, b: Element) -> Element:
        gamma, correction = theta_multiply(self, a[0], b[0])
        return gamma, tuple(x + y + c for x, y, c in zip(a[1], b[1], correction))

    def zero_exponent(self) -> Vector:
        return tuple(Fraction(0) for _ in range(self.monoid.rank))

    def structure_constants(self) -> dict[tuple[GradedPoint, GradedPoint], tuple[GradedPoint, Vector]]:
        """``ϑ_α·ϑ_β = X^c ϑ_γ`` for every pair within the truncation."""
        table = {}
        for a, b in itertools.combinations_with_replacement(self.elements, 2):
            if a.degree + b.degree <= self.truncation:
                table[(a, b)] = theta_multiply(self, a, b)
        logger.debug("structure constants: %d products", len(table))
        return table

    def is_commutative(self) -> bool:
        zero = self.zero_exponent()
        return all(
            self.add((a, zero), (b, zero)) == self.add((b, zero), (a, zero))
            for a, b in itertools.product(self.elements, repeat=2)
            if a.degree + b.degree <= self.truncation
        )

    def is_associative(self) -> bool:
        zero = self.zero_exponent()
        for a, b, c in itertools.product(self.elements, repeat=3):
            if a.degree + b.degree + c.degree > self.truncation:
                continue
            left = self.add(self.add((a, zero), (b, zero)), (c, zero))
            right = self.add((a, zero), self.add((b, zero), (c, zero)))
            if left != right:
                logger.warning("twisted addition is not associative at %s, %s, %s", a, b, c)
                return False
        return True

    def theta_representative(self, alpha: GradedPoint) -> Element:
        """The minimal lift ``(α, φ̃(α))`` of ``α`` to ``S(Q_φ)``."""
        return alpha, self.phi_tilde(alpha)

    def decompose(self, alpha: GradedPoint, height: Sequence[Scalar]) -> tuple[Element, Vector]:
        """Split ``(α, h) ∈ S(Q_φ)`` as its theta representative plus an element of ``P``.

        Raises:
            GkzError: If ``(α, h)`` is not in ``S(Q_φ)``.
        """
        theta = self.theta_representative(alpha)
        rest = tuple(Fraction(h) - t for h, t in zip(height, theta[1]))
        if not self.monoid.contains(rest):
            raise GkzError(f"({alpha}, {tuple(height)}) is not in S(Q_phi)")
        return theta, rest

    def fibre_is_free(self, epigraph: QPhi, alpha: GradedPoint, radius: int = 2) -> bool:
        """The theta representative is the unique minimum of the fibre over ``α``.

        Lattice points ``φ̃(α) + z`` with ``|z_i| <= radius`` are tested for
        membership in ``C(Q_φ)``; each member must be ``P``-above the
        representative, and only the representative may be ``P``-below it.
        """
        base = self.phi_tilde(alpha)
        if not epigraph.contains(alpha, base):
            return False
        for z in itertools.product(range(-radius, radius + 1), repeat=self.monoid.rank):
            h = tuple(b + x for b, x in zip(base, z))
            if not epigraph.contains(alpha, h):
                continue
            if not self.monoid.above(h, base):
                return False
            if any(z) and self.monoid.above(base, h):
                return False
        return True


def theta_multiply(tm: TwistedMonoid, alpha: GradedPoint, beta: GradedPoint) -> tuple[GradedPoint, Vector]:
    """``γ = α + β`` in ``S(Q)`` and the correction ``φ̃(α) + φ̃(β) - φ̃(γ) ∈ P``.

    Raises:
        GkzError: If the total degree exceeds the truncation.
    """
    if alpha.degree + beta.degree > tm.truncation:
        raise GkzError(f"degree {alpha.degree + beta.degree} exceeds the truncation {tm.truncation}")
    gamma = ll_add(alpha, beta)
    correction = tuple(
        a + b - c for a, b, c in zip(tm.phi_tilde(alpha), tm.phi_tilde(beta), tm.phi_tilde(gamma))
    )
    return gamma, correction


def twist_by_affine(tm: TwistedMonoid, affine: AffineMap) -> tuple[TwistedMonoid, bool]:
    """Replace ``φ`` by ``φ + ψ`` for an affine ``ψ`` with values in the units of ``P``.

    Returns:
        The new twisted monoid and whether ``(α, p) ↦ (α, p + deg(α)·ψ(α))``
        intertwines the two additions on the truncation.

    Raises:
        GkzError: If ``ψ`` takes values outside the units of ``P``.
    """
    units = tm.monoid.cone
    for w in (*zip(*affine.linear), affine.constant):
        if not (units.contains(w) and units.contains(tuple(-x for x in w))):
            raise GkzError(f"{[str(x) for x in w]} is not a unit of {tm.monoid.name}")
    pieces = tuple(AffinePiece(p.domain, p.affine + affine, p.cell) for p in tm.phi.pieces)
    shifted = PiecewiseAffineFn(tm.polytope, pieces, tm.phi.paving, tm.phi.target_dim, tm.phi.scalar)
    other = TwistedMonoid.build(tm.polytope, shifted, tm.monoid, tm.truncation)

    def psi_tilde(alpha: GradedPoint) -> Vector:
        if alpha.is_vector:
            return tuple(dot(row, alpha.point) for row in affine.linear)
        return tuple(alpha.degree * x for x in affine(alpha.point))

    def move(element: Element) -> Element:
        alpha, p = element
        return alpha, tuple(x + y for x, y in zip(p, psi_tilde(alpha)))

    zero = tm.zero_exponent()
    for a, b in itertools.product(tm.elements, repeat=2):
        if a.degree + b.degree > tm.truncation:
            continue
        if move(tm.add((a, zero), (b, zero))) != other.add(move((a, zero)), move((b, zero))):
            return other, False
    return other, True


@dataclass(frozen=True)
class Specialization:
    """A one-parameter family obtained by composing ``φ`` with ``v: P -> N``.

    Attributes:
        functional: ``v`` as a covector on ``P^gp``.
        family: The twisted monoid over ``N`` with ``φ' = v∘φ``.
        paving: The paving on which ``φ'`` is affine (coarser than that of ``φ``).
    """

    functional: Vector
    family: TwistedMonoid
    paving: Paving

    @property
    def central_fibre_cells(self) -> list[list[int]]:
        return self.paving.cell_indices()


def specialize(tm: TwistedMonoid, functional: Sequence[Scalar]) -> Specialization:
    """Compose the family with a monotone functional ``v: P -> N``.

    Raises:
        NotMonotone: If ``v`` is negative on some generator of ``P``.
    """
    v = vector(functional)
    cone = tm.monoid.cone
    if any(dot(v, r) < 0 for r in cone.generators) or any(dot(v, l) != 0 for l in cone.lineality):
        raise NotMonotone(f"{[str(x) for x in v]} is not monotone on {tm.monoid.name}")
    composed = tm.phi.compose(v)
    values = [composed(p) for p in tm.polytope.points]
    paving = regular_subdivision(tm.polytope, values)
    family = TwistedMonoid.build(tm.polytope, composed, MonoidP.natural(1), tm.truncation)
    logger.info("specialised family has %d central fibre cells", len(paving.maximal_cells))
    return Specialization(v, family, paving)
