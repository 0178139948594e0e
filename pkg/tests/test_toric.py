"""Tests for gkz_mori.toric: fan data, nef and curve cones, Mori chambers."""

import random
from fractions import Fraction

import pytest

from gkz_mori.errors import GkzError, NotATriangulation, NotInterior
from gkz_mori.kernel.cones import RationalCone
from gkz_mori.kernel.linalg import dot
from gkz_mori.pavings import Cell, LatticePolytope, Paving, Wall, bending_parameters, interpolate
from gkz_mori.secondary import GkzChamber, SecondaryFan
from gkz_mori.services.gkz.jobs import interior_lifts
from gkz_mori.toric import (
    build_fan_data,
    eff_curve_cone,
    is_relative_minimal,
    mori_chamber_check,
    moving_cone,
    nef_cone,
    wall_curve_class,
)

LIFTS_PER_CHAMBER = 20


class TestFanData:
    """Rays, PA lattices and class groups."""

    def test_fine_segment(self, segment_fine: Paving) -> None:
        fd = build_fan_data(segment_fine)
        assert fd.rays == ((0, 1), (1, 1), (2, 1))
        assert fd.pa_rank == 3
        assert fd.pa_index == 1
        assert fd.class_group == (1, ())
        assert fd.full_rank

    def test_coarse_segment(self, segment_coarse: Paving) -> None:
        fd = build_fan_data(segment_coarse)
        assert fd.rays == ((0, 1), (2, 1))
        assert fd.pa_rank == 2
        assert fd.class_group == (0, (2,))

    def test_square_triangulation(self, square_anti: Paving) -> None:
        fd = build_fan_data(square_anti)
        assert fd.pa_rank == 4
        assert fd.class_group == (1, ())
        assert fd.lstar_index == 1

    def test_cones_meet_in_faces(self, square_main: Paving) -> None:
        fd = build_fan_data(square_main)
        maximal = [c for c in fd.cones if c.dimension == 3]
        assert len(maximal) == 2
        meet = maximal[0].intersection(maximal[1])
        assert meet.is_face_of(maximal[0])
        assert meet.dimension == 2


class TestNefAndCurves:
    """Nef cones, effective curves and curve classes of walls."""

    def test_fine_segment_nef(self, segment_fine: Paving) -> None:
        nef = nef_cone(build_fan_data(segment_fine))
        assert nef.generators == ((1,),)
        assert nef.lattice == "L*"

    def test_coarse_segment_nef_is_zero(self, segment_coarse: Paving) -> None:
        assert nef_cone(build_fan_data(segment_coarse)).dimension == 0

    def test_effective_curves(self, segment_fine: Paving) -> None:
        cone, hilbert = eff_curve_cone(build_fan_data(segment_fine))
        assert cone.generators == ((1,),)
        assert hilbert == [(1,)]

    def test_curve_class_of_segment_wall(self, segment_fine: Paving) -> None:
        fd = build_fan_data(segment_fine)
        (wall,) = segment_fine.interior_walls
        curve = wall_curve_class(fd, wall)
        assert curve.circuit == (1, -2, 1)
        assert curve.coordinates == (1,)
        assert curve.mult_wall == 1
        assert curve.mult_cells == (1, 1)

    def test_curve_class_needs_simplices(self, square: LatticePolytope) -> None:
        whole = Cell.spanned_by(square, square.points)
        diagonal = Cell.spanned_by(square, [(0, 1), (1, 0)])
        fd = build_fan_data(Paving.coarse(square))
        with pytest.raises(NotATriangulation):
            wall_curve_class(fd, Wall(diagonal, (whole, whole)))

    def test_curve_class_of_a_foreign_wall(self, square_anti: Paving, square_main: Paving) -> None:
        (wall,) = square_main.interior_walls
        with pytest.raises(GkzError, match="no bending"):
            wall_curve_class(build_fan_data(square_anti), wall)

    def test_relative_minimal(self, segment_fine: Paving, segment_coarse: Paving, square_main: Paving) -> None:
        assert is_relative_minimal(build_fan_data(segment_fine))
        assert not is_relative_minimal(build_fan_data(segment_coarse))
        assert is_relative_minimal(build_fan_data(square_main))

    def test_chamber_is_nef_times_unused_orthant(self, desk_fans: list[SecondaryFan]) -> None:
        for fan in desk_fans:
            for chamber in fan.chambers:
                fd = build_fan_data(chamber.triangulation, fan.context)
                nef = nef_cone(fd)
                unused = []
                for point in chamber.unused_points:
                    unit = [0] * fan.polytope.n_points
                    unit[fan.polytope.index(point)] = 1
                    unused.append(fan.context.project(unit))
                expected = RationalCone.from_generators(
                    list(nef.generators) + unused, nef.lineality, dim=fan.context.rank, lattice="L*"
                )
                assert chamber.cone == expected

    def test_bending_parameters_are_curve_classes(self, desk_fans: list[SecondaryFan]) -> None:
        for fan in desk_fans:
            for chamber in fan.chambers:
                fd = build_fan_data(chamber.triangulation, fan.context)
                if not is_relative_minimal(fd):
                    continue
                g_psi = interpolate(chamber.triangulation, list(fan.psi.coordinates))
                bendings = bending_parameters(g_psi, monoid=lambda _: True)
                for wall in chamber.triangulation.interior_walls:
                    curve = wall_curve_class(fd, wall)
                    lifted = [fan.polytope.embed(v) for v in curve.wall]
                    match = next(b for b in bendings if all(b.wall.contains(x) for x in lifted))
                    assert tuple(match.parameter) == curve.coordinates

    def test_curves_are_nef_dual(self, desk_fans: list[SecondaryFan]) -> None:
        for fan in desk_fans:
            for chamber in fan.chambers:
                fd = build_fan_data(chamber.triangulation, fan.context)
                if not is_relative_minimal(fd):
                    continue
                nef = nef_cone(fd)
                for wall in chamber.triangulation.interior_walls:
                    curve = wall_curve_class(fd, wall).coordinates
                    assert all(dot(curve, y) >= 0 for y in nef.generators)


def _accepted(fan: SecondaryFan, chamber: GkzChamber, lift: tuple) -> bool:
    try:
        return mori_chamber_check(fan.polytope, chamber.triangulation, lift, chamber).verdict
    except NotInterior:
        return False


class TestMoriChamberCheck:
    """Divisors in a chamber induce exactly its triangulation."""

    def test_fine_segment_divisor(self, segment_fine: Paving) -> None:
        verdict = mori_chamber_check(segment_fine.polytope, segment_fine, (0, -1, 0))
        assert verdict.verdict
        assert verdict.same_subdivision
        assert verdict.pd_vertices == ((-1, 2), (1, 0))
        assert verdict.pe_vertices == verdict.pd_vertices
        assert verdict.cell_vertices == verdict.pd_vertices

    def test_coarse_segment_divisor(self, segment_coarse: Paving) -> None:
        verdict = mori_chamber_check(segment_coarse.polytope, segment_coarse, (0, 1, 0))
        assert verdict.verdict
        assert verdict.unused_values == (Fraction(1),)

    def test_foreign_divisor_rejected(self, segment_fine: Paving, segment_coarse: Paving) -> None:
        verdict = mori_chamber_check(segment_fine.polytope, segment_fine, (0, 1, 0))
        assert not verdict.verdict
        assert verdict.induced == segment_coarse

    def test_divisor_on_wall(self, segment_fine: Paving) -> None:
        with pytest.raises(NotInterior):
            mori_chamber_check(segment_fine.polytope, segment_fine, (0, 0, 0))

    def test_wrong_length(self, segment_fine: Paving) -> None:
        with pytest.raises(GkzError):
            mori_chamber_check(segment_fine.polytope, segment_fine, (0, 0))

    def test_mori_chambers_are_gkz_chambers(self, desk_fans: list[SecondaryFan]) -> None:
        rng = random.Random(0)
        for fan in desk_fans:
            lifts = [interior_lifts(c, LIFTS_PER_CHAMBER, rng) for c in fan.chambers]
            for i, chamber in enumerate(fan.chambers):
                for lift in lifts[i]:
                    assert mori_chamber_check(fan.polytope, chamber.triangulation, lift, chamber).verdict
                foreign = [lift for j, own in enumerate(lifts) if j != i for lift in own][:LIFTS_PER_CHAMBER]
                for lift in foreign:
                    assert not _accepted(fan, chamber, lift)


class TestMovingCone:
    """Union of the chambers of relative minimal models."""

    def test_segment_moving_cone_is_a_ray(self, segment_fan: SecondaryFan) -> None:
        moving = moving_cone(segment_fan)
        assert moving.chambers == (0,)
        assert moving.cone.generators == ((1,),)
        assert moving.convex

    def test_square_moving_cone_is_the_line(self, square_fan: SecondaryFan) -> None:
        moving = moving_cone(square_fan)
        assert moving.chambers == (0, 1)
        assert moving.cone.dimension == 1
        assert len(moving.cone.lineality) == 1
        assert moving.convex

    def test_double_simplex_moving_cone_is_convex(self, double_simplex_fan: SecondaryFan) -> None:
        moving = moving_cone(double_simplex_fan)
        assert moving.convex
        assert moving.cone.dimension == 3
