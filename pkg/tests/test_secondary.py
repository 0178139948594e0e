"""Tests for gkz_mori.secondary: the lattice L, Ψ, GKZ chambers and the secondary fan."""

import itertools
from fractions import Fraction

import pytest

from gkz_mori.errors import NoRegularSimplex, NotATriangulation
from gkz_mori.kernel.linalg import is_integral
from gkz_mori.pavings import LatticePolytope, Paving, regular_subdivision
from gkz_mori.secondary import (
    InequalityKind,
    LatticeLContext,
    SecondaryFan,
    enumerate_regular_triangulations,
    find_regular_simplex,
    gkz_cone,
    project_to_Lstar,
    psi_map,
    sample_directions,
    satisfies_gkz_conditions,
)
from tests.conftest import REEVE_VERTICES


class TestLatticeLContext:
    """The relation lattice and the quotient map to L*."""

    def test_segment_relation(self, segment: LatticePolytope) -> None:
        context = LatticeLContext.build(segment)
        assert context.l_basis == ((1, -2, 1),)
        assert context.rank == 1
        assert context.exact

    def test_project(self, segment: LatticePolytope) -> None:
        context = LatticeLContext.build(segment)
        assert project_to_Lstar((0, -1, 0), context) == (2,)

    def test_affine_lifts_project_to_zero(self, double_simplex: LatticePolytope) -> None:
        context = LatticeLContext.build(double_simplex)
        for row in context.aff_basis:
            assert not any(context.project(row))

    def test_section_is_a_right_inverse(self, double_simplex: LatticePolytope) -> None:
        context = LatticeLContext.build(double_simplex)
        y = (Fraction(1), Fraction(-2), Fraction(3, 2))
        assert context.project(context.section(y)) == y

    def test_rank_is_points_minus_dimension_minus_one(self, double_simplex: LatticePolytope) -> None:
        assert LatticeLContext.build(double_simplex).rank == 3

    def test_torsion_without_regular_simplex(self) -> None:
        context = LatticeLContext.build(LatticePolytope.from_vertices(REEVE_VERTICES))
        assert context.rank == 0
        assert context.torsion == (2,)
        assert not context.exact

    def test_l_coordinates_rejects_non_relations(self, segment: LatticePolytope) -> None:
        context = LatticeLContext.build(segment)
        assert context.l_coordinates((2, -4, 2)) == (2,)
        with pytest.raises(ValueError):
            context.l_coordinates((1, 0, 0))


class TestPsiMap:
    """Ψ relative to the first regular simplex."""

    def test_segment_psi(self, segment: LatticePolytope) -> None:
        psi = psi_map(segment)
        assert psi.simplex == ((0,), (1,))
        assert psi.values == ((0, 0, 0), (0, 0, 0), (1, -2, 1))
        assert psi.coordinates == ((0,), (0,), (1,))

    def test_square_psi(self, square: LatticePolytope) -> None:
        psi = psi_map(square)
        assert psi.coordinates == ((0,), (0,), (0,), (1,))

    def test_pairing_vanishes_on_affine_lifts(self, square: LatticePolytope) -> None:
        psi = psi_map(square)
        assert psi.pair((1, 2, 3, 4)) == (0, 0, 0, 0)

    def test_values_are_integral_relations(self, desk_fans: list[SecondaryFan]) -> None:
        for fan in desk_fans:
            for value, coordinates in zip(fan.psi.values, fan.psi.coordinates):
                assert fan.context.is_relation(value)
                assert is_integral(coordinates)

    def test_no_regular_simplex(self) -> None:
        with pytest.raises(NoRegularSimplex):
            find_regular_simplex(LatticePolytope.from_vertices(REEVE_VERTICES))

    def test_non_regular_simplex_rejected(self, segment: LatticePolytope) -> None:
        with pytest.raises(NoRegularSimplex):
            psi_map(segment, simplex=[(0,), (2,)])


class TestGkzCone:
    """Chambers of individual triangulations."""

    def test_fine_segment_chamber(self, segment_fine: Paving) -> None:
        chamber = gkz_cone(segment_fine)
        assert chamber.cone.inequalities == ((1,),)
        assert chamber.cone.lattice == "L*"
        (inequality,) = chamber.inequalities
        assert inequality.kind is InequalityKind.FOLD
        assert chamber.fold_for([(1,)]) is inequality

    def test_coarse_segment_chamber(self, segment_coarse: Paving) -> None:
        chamber = gkz_cone(segment_coarse)
        assert chamber.cone.inequalities == ((-1,),)
        (inequality,) = chamber.inequalities
        assert inequality.kind is InequalityKind.UNUSED
        assert inequality.points == ((1,),)

    def test_affine_functions_in_lineality(self, segment_fine: Paving) -> None:
        chamber = gkz_cone(segment_fine)
        assert len(chamber.tilde_cone.lineality) == 2

    def test_interior_lift(self, square_main: Paving) -> None:
        chamber = gkz_cone(square_main)
        lift = chamber.interior_lift()
        assert chamber.contains_in_interior(lift)
        assert regular_subdivision(square_main.polytope, lift) == square_main

    def test_membership(self, segment_fine: Paving, segment_coarse: Paving) -> None:
        assert gkz_cone(segment_fine).contains((0, -1, 0))
        assert not gkz_cone(segment_fine).contains((0, 1, 0))
        assert gkz_cone(segment_coarse).contains((0, 1, 0))

    def test_requires_triangulation(self, square: LatticePolytope) -> None:
        with pytest.raises(NotATriangulation):
            gkz_cone(Paving.coarse(square))

    def test_missing_wall(self, segment_fine: Paving) -> None:
        with pytest.raises(KeyError):
            gkz_cone(segment_fine).fold_for([(0,)])

    def test_inequalities_match_geometric_oracle(self, double_simplex_fan: SecondaryFan) -> None:
        witnesses = [t.witness for t in double_simplex_fan.triangulations]
        for chamber in double_simplex_fan.chambers:
            for lift in witnesses:
                assert chamber.contains(lift) == satisfies_gkz_conditions(chamber.triangulation, lift)


class TestEnumeration:
    """Oracle and traversal enumerate the same regular triangulations."""

    @pytest.mark.parametrize("fixture", ["segment", "square", "double_simplex"])
    def test_oracle_matches_traversal(self, fixture: str, request: pytest.FixtureRequest) -> None:
        polytope = request.getfixturevalue(fixture)
        traversal = enumerate_regular_triangulations(polytope)
        oracle = enumerate_regular_triangulations(polytope, oracle=True)
        assert [t.triangulation for t in traversal] == [t.triangulation for t in oracle]

    def test_segment_has_two(self, segment: LatticePolytope, segment_fine: Paving, segment_coarse: Paving) -> None:
        found = [t.triangulation for t in enumerate_regular_triangulations(segment)]
        assert found == [segment_fine, segment_coarse]

    def test_square_has_two(self, square: LatticePolytope, square_anti: Paving, square_main: Paving) -> None:
        found = [t.triangulation for t in enumerate_regular_triangulations(square)]
        assert found == [square_anti, square_main]

    def test_witnesses_induce_their_triangulation(self, double_simplex: LatticePolytope) -> None:
        for found in enumerate_regular_triangulations(double_simplex):
            assert regular_subdivision(double_simplex, found.witness) == found.triangulation


class TestSecondaryFan:
    """Fan axioms, adjacency and completeness sampling."""

    def test_segment_fan(self, segment_fan: SecondaryFan) -> None:
        assert len(segment_fan.chambers) == 2
        assert len(segment_fan.walls) == 1
        assert segment_fan.adjacency == {0: [1], 1: [0]}
        assert segment_fan.chamber_of((0, -1, 0)) == [0]
        assert segment_fan.chamber_of((0, 0, 0)) == [0, 1]

    def test_segment_chambers_are_opposite_rays(self, segment_fan: SecondaryFan) -> None:
        assert [c.cone.generators for c in segment_fan.chambers] == [((1,),), ((-1,),)]

    def test_square_fan(self, square_fan: SecondaryFan) -> None:
        assert len(square_fan.chambers) == 2
        assert square_fan.walls[0].chambers == (0, 1)
        assert square_fan.walls[0].facet.dimension == 0

    def test_double_simplex_chambers_full_dimensional(self, double_simplex_fan: SecondaryFan) -> None:
        assert all(c.cone.dimension == 3 for c in double_simplex_fan.chambers)
        assert all(w.facet.dimension == 2 for w in double_simplex_fan.walls)

    def test_double_simplex_chambers_meet_in_faces(self, double_simplex_fan: SecondaryFan) -> None:
        for first, second in itertools.combinations(double_simplex_fan.chambers, 2):
            meet = first.cone.intersection(second.cone)
            assert meet.is_face_of(first.cone)
            assert meet.is_face_of(second.cone)

    def test_adjacency_is_connected(self, double_simplex_fan: SecondaryFan) -> None:
        graph = double_simplex_fan.adjacency
        seen, stack = {0}, [0]
        while stack:
            for neighbour in graph[stack.pop()]:
                if neighbour not in seen:
                    seen.add(neighbour)
                    stack.append(neighbour)
        assert seen == set(graph)

    def test_sampling_is_complete(self, double_simplex_fan: SecondaryFan) -> None:
        report = sample_directions(double_simplex_fan.chambers, 3, 1000, seed=7)
        assert report.directions == 1000
        assert report.complete
        assert report.generic > 0

    def test_sampling_is_seeded(self, double_simplex_fan: SecondaryFan) -> None:
        first = sample_directions(double_simplex_fan.chambers, 3, 100, seed=3)
        second = sample_directions(double_simplex_fan.chambers, 3, 100, seed=3)
        assert first == second

    def test_chamber_interiors_are_disjoint(self, double_simplex_fan: SecondaryFan) -> None:
        chambers = double_simplex_fan.chambers
        for i, chamber in enumerate(chambers):
            point = chamber.cone.interior_point()
            assert [j for j, other in enumerate(chambers) if other.cone.contains(point)] == [i]
