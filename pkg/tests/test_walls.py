"""Tests for gkz_mori.walls: wall classification, q_tau and the cocycle relation."""

import dataclasses
import itertools
from fractions import Fraction

import pytest

from gkz_mori.errors import NotAdjacent
from gkz_mori.pavings import Paving
from gkz_mori.secondary import PsiMap, SecondaryFan, psi_map
from gkz_mori.toric import build_fan_data, wall_curve_class
from gkz_mori.walls import (
    WallCrossing,
    WallKind,
    classify_wall,
    cocycle_check,
    cocycle_holds,
    curve_multiple,
    g12,
    half_lattice_points,
    lineality_spanned_by_q,
    tau_context,
    telescoping_sum,
    vanishes_outside_star,
)

HALF = Fraction(1, 2)


def _crossing(fan: SecondaryFan, first: int, second: int) -> WallCrossing:
    one, two = fan.chambers[first], fan.chambers[second]
    return classify_wall(
        fan.polytope,
        one.triangulation,
        two.triangulation,
        context=fan.context,
        psi=fan.psi,
        chambers=(one, two),
    )


class TestDivisorialWall:
    """The segment [0, 2]: inserting the midpoint."""

    def test_kind_and_q_tau(self, segment_fan: SecondaryFan) -> None:
        crossing = _crossing(segment_fan, 0, 1)
        assert crossing.kind is WallKind.DIVISORIAL
        assert crossing.omega == (Fraction(1),)
        assert crossing.q_tau == (-HALF,)
        assert crossing.closed_form == crossing.q_tau

    def test_carrier_and_barycentric_weights(self, segment_fan: SecondaryFan, segment_fine: Paving) -> None:
        crossing = _crossing(segment_fan, 0, 1)
        assert crossing.sigma_zero.vertices == {(0,), (2,)}
        assert crossing.barycentric == (HALF, HALF)
        assert crossing.star_reproduces
        assert crossing.first == segment_fine

    def test_placement(self, segment_fan: SecondaryFan) -> None:
        crossing = _crossing(segment_fan, 0, 1)
        assert crossing.placement == {"+1": False, "-1": True, "+2": True, "-2": False}
        assert crossing.sign_consistent

    def test_lineality_is_the_line_through_q(self, segment_fan: SecondaryFan) -> None:
        crossing = _crossing(segment_fan, 0, 1)
        assert len(crossing.lineality) == 1
        assert lineality_spanned_by_q(crossing)

    def test_wall_paving_is_the_coarse_one(self, segment_fan: SecondaryFan, segment_coarse: Paving) -> None:
        assert _crossing(segment_fan, 0, 1).wall_paving == segment_coarse

    def test_reversed_order_flips_the_sign(self, segment_fan: SecondaryFan) -> None:
        crossing = _crossing(segment_fan, 1, 0)
        assert crossing.q_tau == (HALF,)
        assert crossing.sign_consistent

    def test_support_is_in_the_star(self, segment_fan: SecondaryFan) -> None:
        crossing = _crossing(segment_fan, 0, 1)
        assert len(half_lattice_points(segment_fan.polytope)) == 5
        assert vanishes_outside_star(crossing) == []

    def test_g12_values(self, segment_fan: SecondaryFan) -> None:
        crossing = _crossing(segment_fan, 0, 1)
        assert crossing.g12.value((0,)) == (0,)
        assert crossing.g12.value((HALF,)) == (-Fraction(1, 4),)


class TestFlippingWall:
    """The unit square: swapping the diagonals."""

    def test_circuit(self, square_fan: SecondaryFan) -> None:
        crossing = _crossing(square_fan, 0, 1)
        assert crossing.kind is WallKind.FLIPPING
        circuit = crossing.circuit
        assert set(circuit.minus) == {(0, 1), (1, 0)}
        assert set(circuit.plus) == {(0, 0), (1, 1)}
        assert circuit.coefficients[(0, 0)] == HALF
        assert circuit.coefficients[(0, 1)] == -HALF
        assert crossing.omega == (HALF, HALF)

    def test_q_tau(self, square_fan: SecondaryFan) -> None:
        crossing = _crossing(square_fan, 0, 1)
        assert crossing.q_tau == (-HALF,)
        assert crossing.closed_form == crossing.q_tau
        assert crossing.sign_consistent

    def test_wall_paving_is_the_square(self, square_fan: SecondaryFan) -> None:
        crossing = _crossing(square_fan, 0, 1)
        (cell,) = crossing.non_simplicial_cells
        assert cell.vertices == set(square_fan.polytope.points)

    def test_q_tau_is_a_multiple_of_the_flipped_curve(self, square_fan: SecondaryFan) -> None:
        crossing = _crossing(square_fan, 0, 1)
        fd = build_fan_data(crossing.first, square_fan.context)
        (wall,) = crossing.first.interior_walls
        curve = wall_curve_class(fd, wall)
        assert curve_multiple(crossing, curve.coordinates) == -HALF

    def test_curve_multiple_of_zero(self, square_fan: SecondaryFan) -> None:
        assert curve_multiple(_crossing(square_fan, 0, 1), (0,)) is None


class TestEveryWall:
    """Properties that hold across all walls of the secondary fan of 2Δ₂."""

    def test_walls_are_consistent(self, double_simplex_fan: SecondaryFan) -> None:
        for fan_wall in double_simplex_fan.walls:
            crossing = _crossing(double_simplex_fan, *fan_wall.chambers)
            assert any(crossing.q_tau)
            assert crossing.sign_consistent
            assert lineality_spanned_by_q(crossing)
            assert vanishes_outside_star(crossing) == []

    def test_divisorial_walls_are_star_subdivisions(self, double_simplex_fan: SecondaryFan) -> None:
        for fan_wall in double_simplex_fan.walls:
            crossing = _crossing(double_simplex_fan, *fan_wall.chambers)
            if crossing.kind is WallKind.DIVISORIAL:
                assert crossing.star_reproduces
                assert sum(crossing.barycentric) == 1

    def test_identical_chambers_are_not_adjacent(self, segment_fan: SecondaryFan) -> None:
        with pytest.raises(NotAdjacent):
            _crossing(segment_fan, 0, 0)

    def test_distant_chambers_are_not_adjacent(self, double_simplex_fan: SecondaryFan) -> None:
        graph = double_simplex_fan.adjacency
        pairs = [(i, j) for i, j in itertools.combinations(graph, 2) if j not in graph[i]]
        assert pairs
        with pytest.raises(NotAdjacent):
            _crossing(double_simplex_fan, *pairs[0])


class TestTauContext:
    """The lattice L_tau of a wall and its monoid."""

    def test_segment_indices(self, segment_fine: Paving, segment_coarse: Paving) -> None:
        tau = tau_context(build_fan_data(segment_fine), build_fan_data(segment_coarse))
        assert tau.indices == (2, 1)
        assert len(tau.units) == 1

    def test_square_indices(self, square_anti: Paving, square_main: Paving) -> None:
        tau = tau_context(build_fan_data(square_anti), build_fan_data(square_main))
        assert tau.indices == (1, 1)

    def test_q_tau_primitive_form(self, segment_fan: SecondaryFan) -> None:
        crossing = _crossing(segment_fan, 0, 1)
        first, second = (build_fan_data(c.triangulation, segment_fan.context) for c in segment_fan.chambers)
        tau = tau_context(first, second)
        assert tau.in_lattice(crossing.q_tau)
        assert tau.in_monoid(crossing.q_tau)
        scalar, direction = tau.primitive_form(crossing.q_tau)
        assert tuple(scalar * x for x in direction) == crossing.q_tau
        assert tau.in_lattice(direction)


class TestCocycle:
    """g¹³ = g¹² + g²³ and telescoping sums around loops."""

    def test_antisymmetric(self, square_fan: SecondaryFan) -> None:
        anti, main = (c.triangulation for c in square_fan.chambers)
        point = (HALF, HALF)
        forward = g12(square_fan.polytope, anti, main, square_fan.psi).value(point)
        backward = g12(square_fan.polytope, main, anti, square_fan.psi).value(point)
        assert tuple(-x for x in backward) == forward

    def test_cocycle_on_double_simplex(self, double_simplex_fan: SecondaryFan) -> None:
        first, second, third = (c.triangulation for c in double_simplex_fan.chambers[:3])
        assert cocycle_check(double_simplex_fan.polytope, first, second, third, psi=double_simplex_fan.psi)

    def test_telescoping_around_a_loop(self, double_simplex_fan: SecondaryFan) -> None:
        path = [c.triangulation for c in double_simplex_fan.chambers[:3]]
        path.append(path[0])
        for x in half_lattice_points(double_simplex_fan.polytope):
            assert not any(telescoping_sum(double_simplex_fan.polytope, path, x, double_simplex_fan.psi))

    def test_differences_do_not_depend_on_the_regular_simplex(self, double_simplex_fan: SecondaryFan) -> None:
        fan = double_simplex_fan
        other = psi_map(fan.polytope, [[1, 0], [2, 0], [1, 1]], fan.context)
        assert other.simplex != fan.psi.simplex
        first, second, third = (c.triangulation for c in fan.chambers[:3])
        points = half_lattice_points(fan.polytope)
        d12 = g12(fan.polytope, first, second, fan.psi)
        d23 = g12(fan.polytope, second, third, other)
        d13 = g12(fan.polytope, first, third, fan.psi)
        assert all(d23.value(x) == g12(fan.polytope, second, third, fan.psi).value(x) for x in points)
        assert cocycle_holds(d12, d23, d13, points)

    def test_mismatched_maps_break_the_cocycle(self, double_simplex_fan: SecondaryFan) -> None:
        fan = double_simplex_fan
        first, second, third = (c.triangulation for c in fan.chambers[:3])
        points = half_lattice_points(fan.polytope)
        d12 = g12(fan.polytope, first, second, fan.psi)
        d13 = g12(fan.polytope, first, third, fan.psi)
        outcomes = [
            cocycle_holds(d12, g12(fan.polytope, second, third, _bumped(fan.psi, i)), d13, points)
            for i in range(fan.polytope.n_points)
        ]
        assert not all(outcomes)


def _bumped(psi: PsiMap, index: int) -> PsiMap:
    """Shift the value of ``Ψ`` at one point, which is not an affine change."""
    coordinates = list(psi.coordinates)
    row = coordinates[index]
    coordinates[index] = (row[0] + 1, *row[1:])
    return dataclasses.replace(psi, coordinates=tuple(coordinates))
