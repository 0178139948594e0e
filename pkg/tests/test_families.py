"""Tests for gkz_mori.families: H_P, twisted monoids, specialisation and the theta section."""

from fractions import Fraction

import pytest

from gkz_mori.errors import GkzError, NotConvex, NotMonotone
from gkz_mori.families import (
    HPMonoid,
    MonoidP,
    TwistedMonoid,
    build_hp,
    q_phi,
    specialize,
    theta_multiply,
    theta_section,
    twist_by_affine,
    universal_bending_check,
    universal_function,
)
from gkz_mori.graded import GradedPoint
from gkz_mori.kernel.cones import RationalCone
from gkz_mori.pavings import AffineMap, LatticePolytope, Paving, interpolate
from gkz_mori.secondary import SecondaryFan
from gkz_mori.toric import build_fan_data, is_relative_minimal

ONE = Fraction(1)


@pytest.fixture(scope="module")
def fine_hp(segment_fine: Paving) -> HPMonoid:
    return build_hp(segment_fine, 2)


@pytest.fixture(scope="module")
def fine_family(segment: LatticePolytope, fine_hp: HPMonoid) -> TwistedMonoid:
    return TwistedMonoid.build(segment, universal_function(fine_hp), fine_hp.monoid(), 4)


class TestHP:
    """The monoid generated by the products α*β."""

    def test_fine_segment(self, fine_hp: HPMonoid) -> None:
        assert fine_hp.n_basis == ((1,),)
        assert fine_hp.generators == ((ONE,),)
        assert fine_hp.saturation_basis == ((ONE,),)
        assert fine_hp.sharp
        assert fine_hp.saturated_cone_matches

    def test_coarse_segment_has_rank_zero(self, segment_coarse: Paving) -> None:
        assert build_hp(segment_coarse, 2).rank == 0

    def test_square_diagonal(self, square_main: Paving) -> None:
        hp = build_hp(square_main, 2)
        assert hp.generators == ((-ONE,),)
        assert hp.saturated_cone_matches

    def test_products_are_symmetric_in_degree(self, fine_hp: HPMonoid) -> None:
        theta1 = GradedPoint.of((1,))
        assert fine_hp.products[(theta1, theta1)] == (0,)
        assert fine_hp.products[(GradedPoint.of((0,)), GradedPoint.of((2,)))] == (ONE,)

    def test_relative_minimal_triangulations(self, double_simplex_fan: SecondaryFan) -> None:
        checked = 0
        for chamber in double_simplex_fan.chambers:
            fd = build_fan_data(chamber.triangulation, double_simplex_fan.context)
            if not is_relative_minimal(fd):
                continue
            hp = build_hp(chamber.triangulation, 2, fd)
            assert hp.saturated_cone_matches
            bendings = universal_bending_check(hp, double_simplex_fan.psi.coordinates)
            assert all(b.in_monoid for b in bendings)
            checked += 1
            if checked == 3:
                break
        assert checked == 3


class TestUniversalFunction:
    """φ vanishes on the first cell and bends by the generators of H."""

    def test_values(self, fine_hp: HPMonoid) -> None:
        phi = universal_function(fine_hp)
        assert [phi.value(p) for p in ((0,), (1,), (2,))] == [(0,), (0,), (ONE,)]

    def test_bending_matches_psi(self, fine_hp: HPMonoid) -> None:
        (bending,) = universal_bending_check(fine_hp, ((0,), (0,), (1,)))
        assert bending.in_monoid


class TestTwistedMonoid:
    """Theta multiplication in S(Q) ⋊ H^sat."""

    def test_a1_relation(self, fine_family: TwistedMonoid) -> None:
        gamma, correction = theta_multiply(fine_family, GradedPoint.of((0,)), GradedPoint.of((2,)))
        assert gamma == GradedPoint(Fraction(2), (ONE,))
        assert correction == (ONE,)
        gamma, correction = theta_multiply(fine_family, GradedPoint.of((1,)), GradedPoint.of((1,)))
        assert gamma == GradedPoint(Fraction(2), (ONE,))
        assert correction == (0,)

    def test_truncation_enforced(self, fine_family: TwistedMonoid) -> None:
        with pytest.raises(GkzError):
            theta_multiply(fine_family, GradedPoint.of((1,), 3), GradedPoint.of((1,), 2))

    def test_commutative_and_associative(self, fine_family: TwistedMonoid) -> None:
        assert fine_family.is_commutative()
        assert fine_family.is_associative()

    def test_corrections_lie_in_the_monoid(self, fine_family: TwistedMonoid) -> None:
        for _, correction in fine_family.structure_constants().values():
            assert fine_family.monoid.contains(correction)

    def test_decompose(self, fine_family: TwistedMonoid) -> None:
        alpha = GradedPoint.of((2,))
        (theta, rest) = fine_family.decompose(alpha, (Fraction(3),))
        assert theta == (alpha, (ONE,))
        assert rest == (Fraction(2),)
        with pytest.raises(GkzError):
            fine_family.decompose(alpha, (0,))

    def test_concave_function_rejected(self, segment: LatticePolytope, segment_fine: Paving) -> None:
        phi = interpolate(segment_fine, [(0,), (1,), (0,)])
        with pytest.raises(NotConvex):
            TwistedMonoid.build(segment, phi, MonoidP.natural(1), 2)
        with pytest.raises(NotConvex):
            q_phi(segment, phi, MonoidP.natural(1))


class TestEpigraph:
    """Q_φ and freeness of the fibres over S(Q)."""

    def test_membership(self, segment: LatticePolytope, segment_fine: Paving) -> None:
        epigraph = q_phi(segment, interpolate(segment_fine, [(0,), (0,), (1,)]), MonoidP.natural(1))
        assert epigraph.contains(GradedPoint.of((2,)), (1,))
        assert not epigraph.contains(GradedPoint.of((2,)), (0,))
        assert epigraph.recession == ((0, 0, ONE),)

    def test_fibres_are_free(self, segment: LatticePolytope, segment_fine: Paving) -> None:
        phi = interpolate(segment_fine, [(0,), (0,), (1,)])
        family = TwistedMonoid.build(segment, phi, MonoidP.natural(1), 2)
        epigraph = q_phi(segment, phi, MonoidP.natural(1))
        for alpha in family.elements:
            if not alpha.is_vector:
                assert family.fibre_is_free(epigraph, alpha)


class TestTwistAndSpecialise:
    """Affine twists and one-parameter specialisations."""

    def test_twist_by_units(self, segment: LatticePolytope, segment_fine: Paving) -> None:
        units = MonoidP("Z", RationalCone.full(1))
        family = TwistedMonoid.build(segment, interpolate(segment_fine, [(0,), (0,), (1,)]), units, 3)
        twisted, isomorphic = twist_by_affine(family, AffineMap(((ONE,),), (Fraction(2),)))
        assert isomorphic
        assert twisted.phi.value((2,)) == (Fraction(5),)

    def test_twist_by_non_units_rejected(self, fine_family: TwistedMonoid) -> None:
        with pytest.raises(GkzError):
            twist_by_affine(fine_family, AffineMap(((0,),), (ONE,)))

    def test_specialise(self, fine_family: TwistedMonoid) -> None:
        special = specialize(fine_family, (1,))
        assert special.central_fibre_cells == [[0, 1], [1, 2]]
        assert special.family.monoid.name == "N^1"

    def test_non_monotone_functional_rejected(self, fine_family: TwistedMonoid) -> None:
        with pytest.raises(NotMonotone):
            specialize(fine_family, (-1,))


class TestThetaSection:
    """Exponents of the theta section on each chart."""

    def test_fine_segment(self, segment_fine: Paving) -> None:
        theta = theta_section(segment_fine)
        assert all(theta.zero)
        assert theta.stable
        assert theta.consistent

    def test_coarse_segment(self, segment_coarse: Paving) -> None:
        theta = theta_section(segment_coarse)
        assert theta.exponents == ((0,), (-Fraction(1, 2),), (0,))
        assert theta.zero == (True, False, True)
        assert theta.stable
        assert theta.consistent
        assert theta.above_zero

    def test_every_chamber(self, double_simplex_fan: SecondaryFan) -> None:
        for chamber in double_simplex_fan.chambers:
            theta = theta_section(chamber.triangulation, double_simplex_fan.psi, double_simplex_fan.context)
            assert theta.consistent
            assert theta.above_zero
