"""Tests for gkz_mori.graded: the linearised lattice and S(Q)."""

from fractions import Fraction

import pytest

from gkz_mori.graded import GradedPoint, cone_over, linearize, ll_add, ll_scale, s_of_q, slice_check
from gkz_mori.pavings import LatticePolytope, interpolate


class TestLinearisedAddition:
    """The three branches of addition in the linearised lattice."""

    def test_two_points_average(self) -> None:
        total = ll_add(GradedPoint.of((0,)), GradedPoint.of((2,)))
        assert total == GradedPoint(Fraction(2), (Fraction(1),))

    def test_point_plus_vector(self) -> None:
        total = ll_add(GradedPoint.of((1,), 2), GradedPoint(Fraction(0), (Fraction(1),)))
        assert total == GradedPoint(Fraction(2), (Fraction(3, 2),))

    def test_vector_plus_point(self) -> None:
        total = ll_add(GradedPoint(Fraction(0), (Fraction(1),)), GradedPoint.of((1,)))
        assert total == GradedPoint(Fraction(1), (Fraction(2),))

    def test_opposite_degrees_give_a_vector(self) -> None:
        total = ll_add(GradedPoint.of((3,), 1), GradedPoint.of((1,), -1))
        assert total.is_vector
        assert total.point == (Fraction(2),)

    def test_vectors_add(self) -> None:
        a = GradedPoint(Fraction(0), (Fraction(1), Fraction(0)))
        b = GradedPoint(Fraction(0), (Fraction(0), Fraction(2)))
        assert ll_add(a, b).point == (Fraction(1), Fraction(2))

    def test_commutative(self) -> None:
        a, b = GradedPoint.of((0, 1), 2), GradedPoint.of((1, 0), 3)
        assert ll_add(a, b) == ll_add(b, a)

    def test_rank_mismatch_rejected(self) -> None:
        with pytest.raises(ValueError):
            ll_add(GradedPoint.of((0,)), GradedPoint.of((0, 0)))

    def test_scale(self) -> None:
        assert ll_scale(GradedPoint.of((1,)), 3) == GradedPoint(Fraction(3), (Fraction(1),))
        assert ll_scale(GradedPoint.of((1,)), 0).is_vector


class TestGradedMonoid:
    """S(Q) slices against the lattice points of C(Q)."""

    def test_cone_over_segment(self, segment: LatticePolytope) -> None:
        cone = cone_over(segment)
        assert cone.lattice == "XX"
        assert set(cone.generators) == {(0, 1), (2, 1)}

    def test_segment_slices(self, segment: LatticePolytope) -> None:
        graded = s_of_q(segment, 2)
        degrees = [p.degree for p in graded]
        assert degrees.count(0) == 1
        assert degrees.count(1) == 3
        assert degrees.count(2) == 5
        assert GradedPoint(Fraction(2), (Fraction(1, 2),)) in graded

    def test_square_slices(self, square: LatticePolytope) -> None:
        graded = s_of_q(square, 3)
        for d in range(1, 4):
            assert sum(1 for p in graded if p.degree == d) == (d + 1) ** 2

    def test_sorted_by_degree(self, double_simplex: LatticePolytope) -> None:
        graded = s_of_q(double_simplex, 2)
        assert graded == sorted(graded)

    @pytest.mark.parametrize("fixture", ["segment", "square", "double_simplex"])
    def test_slices_match_cone(self, fixture: str, request: pytest.FixtureRequest) -> None:
        polytope = request.getfixturevalue(fixture)
        assert slice_check(polytope, 3)


class TestLinearize:
    """Homogenisation of piecewise affine functions."""

    def test_degree_scaling(self, segment: LatticePolytope, segment_fine) -> None:
        phi = interpolate(segment_fine, [0, 0, 2])
        linear = linearize(phi)
        assert linear(GradedPoint.of((Fraction(3, 2),), 2)) == 2
        assert linear(GradedPoint.of((2,))) == 2
        assert linear(GradedPoint.of((1,), 3)) == 0
