"""Full-dimensional lattice polytopes and their lattice points."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from gkz_mori.errors import InvalidPolytope
from gkz_mori.graded import AmbientLattice, cone_over
from gkz_mori.kernel.cones import RationalCone
from gkz_mori.kernel.linalg import IntVector, Scalar, Vector

logger = logging.getLogger(__name__)

__all__ = ["LatticePolytope", "lattice_points"]


@dataclass(frozen=True)
class LatticePolytope:
    """A full-dimensional lattice polytope ``Q`` in ``Z^g``.

    Attributes:
        vertices: Extreme points, sorted lexicographically.
        points: All lattice points ``I = Q(Z)``, sorted lexicographically.
        cone: The cone ``C(Q)`` over ``Q`` in the linearised lattice.
    """

    vertices: tuple[IntVector, ...]
    points: tuple[IntVector, ...] = field(compare=False)
    cone: RationalCone = field(compare=False, repr=False)

    @classmethod
    def from_vertices(cls, points: Sequence[Sequence[int]]) -> LatticePolytope:
        """Build the convex hull of ``points``.

        Raises:
            InvalidPolytope: If the points are empty, of mixed length, or
                do not span a full-dimensional polytope.
        """
        if not points:
            raise InvalidPolytope("a polytope needs at least one vertex")
        g = len(points[0])
        if g == 0 or any(len(p) != g for p in points):
            raise InvalidPolytope("vertices must be nonempty integer vectors of one common length")
        given = sorted({tuple(int(x) for x in p) for p in points})
        cone = cone_over(given)
        if cone.dimension != g + 1:
            raise InvalidPolytope(f"the points span a polytope of dimension {cone.dimension - 1}, not {g}")
        origin = given[0]
        vertices = tuple(sorted(tuple(r[j] + origin[j] for j in range(g)) for r in cone.generators))
        low = [min(v[j] for v in vertices) for j in range(g)]
        high = [max(v[j] for v in vertices) for j in range(g)]
        lattice = AmbientLattice(g, origin)
        lattice_pts = tuple(
            p
            for p in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(low, high)))
            if cone.contains(lattice.embed(p))
        )
        logger.debug("polytope with %d vertices and %d lattice points", len(vertices), len(lattice_pts))
        return cls(vertices, lattice_pts, cone)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def origin(self) -> IntVector:
        """The lexicographically first vertex, origin of all affine coordinates."""
        return self.vertices[0]

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def lattice(self) -> AmbientLattice:
        return AmbientLattice(self.dim, self.origin)

    def embed(self, q: Sequence[Scalar]) -> Vector:
        return self.lattice.embed(q)

    def contains(self, q: Sequence[Scalar]) -> bool:
        return self.cone.contains(self.embed(q))

    def index(self, point: Sequence[int]) -> int:
        return self.points.index(tuple(point))


def lattice_points(polytope: LatticePolytope) -> list[IntVector]:
    """All lattice points of ``polytope`` in lexicographic order."""
    return list(polytope.points)
