"""Shared desk-scale polytopes and their secondary fans."""

import json

import pytest

from gkz_mori.pavings import LatticePolytope, Paving
from gkz_mori.secondary import SecondaryFan, build_secondary_fan

SEGMENT_VERTICES = [[0], [2]]
SQUARE_VERTICES = [[0, 0], [1, 0], [0, 1], [1, 1]]
DOUBLE_SIMPLEX_VERTICES = [[0, 0], [2, 0], [0, 2]]
# Empty tetrahedron of volume 2: four lattice points, no unimodular simplex.
REEVE_VERTICES = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 2]]


def document(vertices: list[list[int]], cells: list[list[int]] | None = None) -> str:
    """The JSON polytope document for *vertices*."""
    payload: dict = {"dim": len(vertices[0]), "vertices": vertices}
    if cells is not None:
        payload["cells"] = cells
    return json.dumps(payload)


@pytest.fixture(scope="session")
def segment() -> LatticePolytope:
    return LatticePolytope.from_vertices(SEGMENT_VERTICES)


@pytest.fixture(scope="session")
def square() -> LatticePolytope:
    return LatticePolytope.from_vertices(SQUARE_VERTICES)


@pytest.fixture(scope="session")
def double_simplex() -> LatticePolytope:
    return LatticePolytope.from_vertices(DOUBLE_SIMPLEX_VERTICES)


@pytest.fixture(scope="session")
def segment_fine(segment: LatticePolytope) -> Paving:
    return Paving.from_indices(segment, [[0, 1], [1, 2]])


@pytest.fixture(scope="session")
def segment_coarse(segment: LatticePolytope) -> Paving:
    return Paving.coarse(segment)


@pytest.fixture(scope="session")
def square_anti(square: LatticePolytope) -> Paving:
    """Cut along the diagonal from (0,1) to (1,0)."""
    return Paving.from_indices(square, [[0, 1, 2], [1, 2, 3]])


@pytest.fixture(scope="session")
def square_main(square: LatticePolytope) -> Paving:
    """Cut along the diagonal from (0,0) to (1,1)."""
    return Paving.from_indices(square, [[0, 1, 3], [0, 2, 3]])


@pytest.fixture(scope="session")
def segment_fan(segment: LatticePolytope) -> SecondaryFan:
    return build_secondary_fan(segment)


@pytest.fixture(scope="session")
def square_fan(square: LatticePolytope) -> SecondaryFan:
    return build_secondary_fan(square)


@pytest.fixture(scope="session")
def double_simplex_fan(double_simplex: LatticePolytope) -> SecondaryFan:
    return build_secondary_fan(double_simplex)


@pytest.fixture(scope="session")
def desk_fans(segment_fan: SecondaryFan, square_fan: SecondaryFan, double_simplex_fan: SecondaryFan) -> list[SecondaryFan]:
    return [segment_fan, square_fan, double_simplex_fan]
