"""Rational polyhedral cones with canonical H- and V-representations.

Conversions use the double-description method with an algebraic
adjacency test. Every cone is stored in a canonical form, so two
``RationalCone`` values compare equal exactly when they are the same
point set in the same lattice:

* ``lineality`` and ``equations`` are reduced-echelon bases with rows
  scaled to primitive integer vectors;
* ``generators`` are the extreme rays of the cone modulo its lineality,
  projected onto the orthogonal complement of the lineality space;
* ``inequalities`` are the facet normals projected onto the linear span
  of the cone.

All vectors are primitive integer tuples sorted lexicographically.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from gkz_mori.errors import ConeError
from gkz_mori.kernel.linalg import (
    IntVector,
    Scalar,
    dot,
    nullspace,
    orthogonal_projection,
    primitive,
    rank,
    subspace_basis,
)

logger = logging.getLogger(__name__)

__all__ = ["RationalCone", "dual_cone"]


def _unique(vectors: Iterable[IntVector]) -> list[IntVector]:
    seen: dict[IntVector, None] = {}
    for v in vectors:
        if any(v):
            seen.setdefault(v, None)
    return list(seen)


def _double_description(
    inequalities: Sequence[Sequence[Scalar]], equations: Sequence[Sequence[Scalar]], dim: int
) -> tuple[list[IntVector], list[IntVector]]:
    """Extreme rays and a lineality basis of ``{x : A x >= 0, E x = 0}``."""
    lineality = [primitive(v) for v in nullspace(equations, dim)]
    rays: list[IntVector] = []
    processed: list[IntVector] = []
    for raw in inequalities:
        a = primitive(raw)
        if not any(a):
            continue
        moving_index = next((k for k, l in enumerate(lineality) if dot(a, l) != 0), None)
        if moving_index is not None:
            # a is not constant on the lineality space: l0 becomes a ray.
            l0 = lineality.pop(moving_index)
            s = dot(a, l0)
            if s < 0:
                l0, s = tuple(-x for x in l0), -s

            def shift(v: IntVector, l0: IntVector = l0, s: Fraction = s) -> IntVector:
                c = dot(a, v) / s
                return primitive(tuple(x - c * y for x, y in zip(v, l0)))

            lineality = [shift(l) for l in lineality]
            rays = [shift(r) for r in rays] + [l0]
            processed.append(a)
            continue

        values = [dot(a, r) for r in rays]
        positive = [r for r, v in zip(rays, values) if v > 0]
        negative = [r for r, v in zip(rays, values) if v < 0]
        zero = [r for r, v in zip(rays, values) if v == 0]
        created: list[IntVector] = []
        if positive and negative:
            target = dim - len(lineality) - 2
            tight = {r: frozenset(i for i, b in enumerate(processed) if dot(b, r) == 0) for r in positive + negative}
            for p in positive:
                ap = dot(a, p)
                for n in negative:
                    common = tight[p] & tight[n]
                    rows = [processed[i] for i in sorted(common)] + [tuple(e) for e in equations]
                    if rank(rows, dim) != target:
                        continue
                    an = dot(a, n)
                    created.append(primitive(tuple(ap * x - an * y for x, y in zip(n, p))))
        rays = _unique(positive + zero + created)
        processed.append(a)
    return rays, lineality


def _canonical_v(rays: Sequence[IntVector], lineality: Sequence[IntVector], dim: int) -> tuple[
    tuple[IntVector, ...], tuple[IntVector, ...]
]:
    basis = subspace_basis(lineality, dim) if lineality else []
    projected = _unique(primitive(orthogonal_projection(r, basis)) for r in rays)
    return tuple(sorted(projected)), tuple(sorted(basis))


@dataclass(frozen=True)
class RationalCone:
    """A rational polyhedral cone ``{x : A x >= 0, E x = 0}`` in a named lattice.

    Construct through :meth:`from_generators` or :meth:`from_inequalities`;
    the raw constructor validates that both representations agree.

    Attributes:
        lattice: Name of the ambient lattice (for example ``"Z^3"`` or ``"L*"``).
        ambient_dim: Rank of the ambient lattice.
        inequalities: Facet normals ``a`` with ``a·x >= 0`` on the cone.
        equations: Basis of the covectors vanishing on the cone.
        generators: Extreme rays modulo the lineality space.
        lineality: Basis of the largest linear subspace in the cone.
    """

    lattice: str
    ambient_dim: int
    inequalities: tuple[IntVector, ...]
    equations: tuple[IntVector, ...]
    generators: tuple[IntVector, ...]
    lineality: tuple[IntVector, ...]

    def __post_init__(self) -> None:
        for g in self.generators + self.lineality:
            if any(dot(e, g) != 0 for e in self.equations):
                raise ConeError(f"generator {g} violates an equation of the cone in {self.lattice}")
            if any(dot(a, g) < 0 for a in self.inequalities):
                raise ConeError(f"generator {g} violates an inequality of the cone in {self.lattice}")
        for l in self.lineality:
            if any(dot(a, l) != 0 for a in self.inequalities):
                raise ConeError(f"lineality vector {l} is not in the boundary of every facet")
        spanned = rank(list(self.generators) + list(self.lineality), self.ambient_dim)
        if spanned != self.ambient_dim - len(self.equations):
            raise ConeError(
                f"representations disagree in {self.lattice}: V-rep spans {spanned}, "
                f"H-rep allows {self.ambient_dim - len(self.equations)}"
            )

    @classmethod
    def from_inequalities(
        cls,
        inequalities: Sequence[Sequence[Scalar]],
        equations: Sequence[Sequence[Scalar]] = (),
        *,
        dim: int | None = None,
        lattice: str | None = None,
    ) -> RationalCone:
        """Build ``{x : a·x >= 0 for a in inequalities, e·x = 0 for e in equations}``."""
        n = _dimension(dim, inequalities, equations)
        rays, lineality = _double_description(inequalities, equations, n)
        return cls._from_v(rays, lineality, n, lattice)

    @classmethod
    def from_generators(
        cls,
        generators: Sequence[Sequence[Scalar]],
        lineality: Sequence[Sequence[Scalar]] = (),
        *,
        dim: int | None = None,
        lattice: str | None = None,
    ) -> RationalCone:
        """Build the cone spanned by ``generators`` plus the subspace ``span(lineality)``."""
        n = _dimension(dim, generators, lineality)
        facets, equations = _double_description(generators, lineality, n)
        rays, lines = _double_description(facets, equations, n)
        return cls._from_v(rays, lines, n, lattice)

    @classmethod
    def _from_v(
        cls, rays: Sequence[IntVector], lineality: Sequence[IntVector], n: int, lattice: str | None
    ) -> RationalCone:
        generators, lines = _canonical_v(rays, lineality, n)
        facets, equations = _double_description(generators, lines, n)
        inequalities, equation_basis = _canonical_v(facets, equations, n)
        return cls(
            lattice=lattice or f"Z^{n}",
            ambient_dim=n,
            inequalities=inequalities,
            equations=equation_basis,
            generators=generators,
            lineality=lines,
        )

    @classmethod
    def zero(cls, dim: int, lattice: str | None = None) -> RationalCone:
        return cls.from_generators([], dim=dim, lattice=lattice)

    @classmethod
    def full(cls, dim: int, lattice: str | None = None) -> RationalCone:
        return cls.from_inequalities([], dim=dim, lattice=lattice)

    @property
    def dimension(self) -> int:
        return self.ambient_dim - len(self.equations)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    def contains(self, x: Sequence[Scalar]) -> bool:
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(a, x) >= 0 for a in self.inequalities)

    def in_interior(self, x: Sequence[Scalar]) -> bool:
        """True when ``x`` lies in the relative interior."""
        return all(dot(e, x) == 0 for e in self.equations) and all(dot(a, x) > 0 for a in self.inequalities)

    def contains_cone(self, other: RationalCone) -> bool:
        if not all(self.contains(g) for g in other.generators):
            return False
        return all(self.contains(l) and self.contains(tuple(-x for x in l)) for l in other.lineality)

    def intersection(self, other: RationalCone) -> RationalCone:
        self._check_same_space(other)
        return RationalCone.from_inequalities(
            self.inequalities + other.inequalities,
            self.equations + other.equations,
            dim=self.ambient_dim,
            lattice=self.lattice,
        )

    def sum(self, other: RationalCone) -> RationalCone:
        """Minkowski sum of two cones in the same lattice."""
        self._check_same_space(other)
        return RationalCone.from_generators(
            self.generators + other.generators,
            self.lineality + other.lineality,
            dim=self.ambient_dim,
            lattice=self.lattice,
        )

    def face(self, covectors: Iterable[Sequence[Scalar]]) -> RationalCone:
        """The face cut out by ``a·x = 0`` for valid inequalities ``a``."""
        return RationalCone.from_inequalities(
            self.inequalities,
            list(self.equations) + [tuple(c) for c in covectors],
            dim=self.ambient_dim,
            lattice=self.lattice,
        )

    def tight_inequalities(self, other: RationalCone) -> list[IntVector]:
        """Facet normals of ``self`` vanishing on all of ``other``."""
        vectors = other.generators + other.lineality
        return [a for a in self.inequalities if all(dot(a, v) == 0 for v in vectors)]

    def is_face_of(self, other: RationalCone) -> bool:
        """True when ``self`` is a (possibly improper) face of ``other``."""
        if not other.contains_cone(self):
            return False
        return other.face(other.tight_inequalities(self)) == self

    def facets(self) -> list[RationalCone]:
        return [self.face([a]) for a in self.inequalities]

    def interior_point(self) -> IntVector:
        """A lattice point in the relative interior (sum of the extreme rays)."""
        point = [0] * self.ambient_dim
        for g in self.generators:
            point = [x + y for x, y in zip(point, g)]
        return tuple(point)

    def in_lattice(self, lattice: str) -> RationalCone:
        """The same cone relabelled in another lattice of equal rank."""
        return RationalCone(
            lattice, self.ambient_dim, self.inequalities, self.equations, self.generators, self.lineality
        )

    def _check_same_space(self, other: RationalCone) -> None:
        if other.ambient_dim != self.ambient_dim:
            raise ConeError(f"cones live in different dimensions: {self.ambient_dim} and {other.ambient_dim}")


def _dimension(dim: int | None, *collections: Sequence[Sequence[Scalar]]) -> int:
    if dim is not None:
        return dim
    for collection in collections:
        if collection:
            return len(collection[0])
    raise ConeError("cannot infer the ambient dimension of an empty description")


def dual_cone(cone: RationalCone) -> RationalCone:
    """The dual cone ``{a : a·x >= 0 for all x in cone}`` in the dual lattice.

    The dual lattice name toggles a trailing ``*``.
    """
    name = cone.lattice[:-1] if cone.lattice.endswith("*") else f"{cone.lattice}*"
    dual = RationalCone.from_inequalities(cone.generators, cone.lineality, dim=cone.ambient_dim, lattice=name)
    logger.debug("dual of %d-dimensional cone in %s has %d rays", cone.dimension, cone.lattice, len(dual.generators))
    return dual
