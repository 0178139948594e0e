"""Hilbert bases of pointed rational cones by bounded enumeration."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from fractions import Fraction

from gkz_mori.errors import ConeError
from gkz_mori.kernel.cones import RationalCone, dual_cone
from gkz_mori.kernel.linalg import IntVector, Scalar, Vector, dot, primitive, solve, transpose, vec_mat
from gkz_mori.kernel.normal_forms import saturation_basis

logger = logging.getLogger(__name__)

__all__ = ["decompose", "hilbert_basis"]


def _coordinates(v: Sequence[Scalar], basis: Sequence[Sequence[Scalar]], n: int) -> Vector:
    coords = solve(transpose(basis, n), v, len(basis))
    if coords is None:
        raise ConeError(f"{tuple(v)} is outside the span of the lattice basis")
    return coords


def hilbert_basis(cone: RationalCone, lattice_basis: Sequence[Sequence[Scalar]] | None = None) -> list[Vector]:
    """Minimal generating set of ``cone ∩ lattice``.

    Args:
        cone: A pointed cone.
        lattice_basis: Rational basis of the lattice to use; by default
            ``Z^n`` intersected with the span of the cone.

    Returns:
        The Hilbert basis, sorted lexicographically, as rational vectors
        of the ambient space.

    Raises:
        ConeError: If the cone contains a line.
    """
    if cone.lineality:
        raise ConeError("Hilbert basis requested for a cone with nontrivial lineality")
    if not cone.generators:
        return []
    n = cone.ambient_dim
    basis: list[Sequence[Scalar]] = (
        list(lattice_basis) if lattice_basis is not None else [tuple(int(i == j) for j in range(n)) for i in range(n)]
    )
    coords = [primitive(_coordinates(g, basis, n)) for g in cone.generators]
    # Restrict to the saturated sublattice spanned by the cone.
    span = saturation_basis(coords, len(basis))
    basis = [vec_mat(row, basis, n) for row in span]
    k = len(basis)
    rays = [primitive(_coordinates(g, basis, n)) for g in cone.generators]
    local = RationalCone.from_generators(rays, dim=k)
    grading = [sum(column) for column in zip(*dual_cone(local).generators)]
    cap = sum(dot(grading, r) for r in rays)
    low = [sum(min(0, r[j]) for r in rays) for j in range(k)]
    high = [sum(max(0, r[j]) for r in rays) for j in range(k)]

    candidates: list[tuple[Fraction, IntVector]] = []
    for z in itertools.product(*(range(lo, hi + 1) for lo, hi in zip(low, high))):
        if not any(z) or not local.contains(z):
            continue
        degree = dot(grading, z)
        if degree <= cap:
            candidates.append((degree, z))
    candidates.sort()

    irreducible: list[IntVector] = []
    for _, z in candidates:
        if not any(local.contains(tuple(a - b for a, b in zip(z, y))) for y in irreducible):
            irreducible.append(z)
    result = sorted(vec_mat(z, basis, n) for z in irreducible)
    logger.debug("Hilbert basis of a %d-dimensional cone: %d elements", k, len(result))
    return result


def decompose(
    point: Sequence[Scalar], generators: Sequence[Sequence[Scalar]], cone: RationalCone, limit: int = 10_000
) -> list[int] | None:
    """Write ``point`` as a nonnegative integer combination of ``generators``.

    Depth-first search that only descends into ``point - g`` when that
    difference stays in ``cone``. Returns multiplicities per generator, or
    ``None`` when no combination exists or ``limit`` steps are exhausted.
    """
    budget = [limit]
    seen: set[tuple[Fraction, ...]] = set()

    def search(rest: tuple[Fraction, ...]) -> list[int] | None:
        if not any(rest):
            return [0] * len(generators)
        if rest in seen or budget[0] <= 0:
            return None
        budget[0] -= 1
        seen.add(rest)
        for index, g in enumerate(generators):
            smaller = tuple(a - b for a, b in zip(rest, g))
            if cone.contains(smaller):
                found = search(smaller)
                if found is not None:
                    found[index] += 1
                    return found
        return None

    return search(tuple(Fraction(x) for x in point))
