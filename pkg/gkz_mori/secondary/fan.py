"""Assembly and verification of the secondary fan in ``L* ⊗ R``."""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass

from gkz_mori.config import DEFAULT_FAN_DIRECTIONS, DEFAULT_SEED, SAMPLE_RADIUS
from gkz_mori.errors import GkzError
from gkz_mori.kernel.cones import RationalCone
from gkz_mori.kernel.linalg import IntVector
from gkz_mori.pavings.polytope import LatticePolytope
from gkz_mori.secondary.chambers import GkzChamber, gkz_cone
from gkz_mori.secondary.enumeration import RegularTriangulation, enumerate_regular_triangulations
from gkz_mori.secondary.lattice import LatticeLContext, PsiMap, psi_map

logger = logging.getLogger(__name__)

__all__ = ["FanWall", "SamplingReport", "SecondaryFan", "build_secondary_fan", "sample_directions"]


@dataclass(frozen=True)
class FanWall:
    """Two chambers meeting along a common facet."""

    chambers: tuple[int, int]
    facet: RationalCone


@dataclass(frozen=True)
class SamplingReport:
    """Outcome of the random completeness check.

    Attributes:
        directions: Number of directions drawn.
        uncovered: Directions lying in no chamber (a complete fan has none).
        generic: Directions lying in exactly one chamber.
    """

    directions: int
    uncovered: tuple[IntVector, ...]
    generic: int

    @property
    def complete(self) -> bool:
        return not self.uncovered


@dataclass(frozen=True)
class SecondaryFan:
    """The chambers of all regular triangulations with their walls."""

    polytope: LatticePolytope
    context: LatticeLContext
    psi: PsiMap
    triangulations: tuple[RegularTriangulation, ...]
    chambers: tuple[GkzChamber, ...]
    walls: tuple[FanWall, ...]
    sampling: SamplingReport

    @property
    def adjacency(self) -> dict[int, list[int]]:
        graph: dict[int, list[int]] = {i: [] for i in range(len(self.chambers))}
        for wall in self.walls:
            a, b = wall.chambers
            graph[a].append(b)
            graph[b].append(a)
        return {k: sorted(v) for k, v in graph.items()}

    def chamber_of(self, lift: tuple) -> list[int]:
        """Indices of the chambers whose ``C̃`` contains ``lift``."""
        return [i for i, c in enumerate(self.chambers) if c.contains(lift)]


def sample_directions(
    chambers: tuple[GkzChamber, ...] | list[GkzChamber], dimension: int, count: int, seed: int
) -> SamplingReport:
    """Draw random integer directions in ``L*`` and count the chambers containing each."""
    if dimension == 0:
        return SamplingReport(0, (), 0)
    rng = random.Random(seed)
    uncovered = []
    generic = 0
    for _ in range(count):
        y = tuple(rng.randint(-SAMPLE_RADIUS, SAMPLE_RADIUS) for _ in range(dimension))
        if not any(y):
            continue
        hits = sum(1 for c in chambers if c.cone.contains(y))
        if hits == 0:
            uncovered.append(y)
        elif hits == 1:
            generic += 1
    return SamplingReport(count, tuple(uncovered), generic)


def build_secondary_fan(
    polytope: LatticePolytope,
    *,
    oracle: bool = False,
    directions: int = DEFAULT_FAN_DIRECTIONS,
    seed: int = DEFAULT_SEED,
) -> SecondaryFan:
    """Enumerate chambers and verify the fan axioms.

    Raises:
        NoRegularSimplex: If ``Q`` contains no regular simplex.
        GkzError: If a chamber has the wrong dimension or two chambers do
            not meet in a common face.
    """
    psi = psi_map(polytope)
    context = LatticeLContext.build(polytope)
    triangulations = enumerate_regular_triangulations(polytope, oracle=oracle, context=context)
    chambers = tuple(gkz_cone(t.triangulation, context) for t in triangulations)
    expected = polytope.n_points - polytope.dim - 1
    for chamber in chambers:
        if chamber.cone.dimension != expected:
            raise GkzError(
                f"chamber of {chamber.triangulation.cell_indices()} has dimension "
                f"{chamber.cone.dimension}, expected {expected}"
            )
    walls = []
    for (i, first), (j, second) in itertools.combinations(enumerate(chambers), 2):
        meet = first.cone.intersection(second.cone)
        if not (meet.is_face_of(first.cone) and meet.is_face_of(second.cone)):
            raise GkzError(f"chambers {i} and {j} do not meet in a common face")
        if meet.dimension == expected - 1:
            walls.append(FanWall((i, j), meet))
    sampling = sample_directions(chambers, context.rank, directions, seed)
    if not sampling.complete:
        raise GkzError(f"{len(sampling.uncovered)} sampled directions lie in no chamber")
    logger.info("secondary fan: %d chambers, %d walls", len(chambers), len(walls))
    return SecondaryFan(polytope, context, psi, tuple(triangulations), chambers, tuple(walls), sampling)
