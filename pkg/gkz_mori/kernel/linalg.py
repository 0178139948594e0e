"""Exact rational linear algebra on top of sympy's ``DomainMatrix``.

Vectors are tuples of :class:`~fractions.Fraction` and matrices are
sequences of such rows. Every helper accepts ``int`` entries as well;
no helper ever produces a float.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import gcd, lcm

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

__all__ = [
    "IntVector",
    "Scalar",
    "Vector",
    "affine_coordinates",
    "canonical_sign",
    "determinant",
    "dot",
    "inverse",
    "is_integral",
    "mat_vec",
    "nullspace",
    "orthogonal_projection",
    "primitive",
    "rank",
    "rref",
    "solve",
    "subspace_basis",
    "transpose",
    "vec_mat",
    "vector",
]

Scalar = int | Fraction
Vector = tuple[Fraction, ...]
IntVector = tuple[int, ...]


def vector(values: Iterable[Scalar]) -> Vector:
    """Coerce an iterable of integers or fractions into a :data:`Vector`."""
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)


def _to_domain(rows: Sequence[Sequence[Scalar]], ncols: int) -> DomainMatrix:
    data = [[QQ(int(Fraction(x).numerator), int(Fraction(x).denominator)) for x in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def _from_domain(matrix: DomainMatrix) -> list[Vector]:
    dense = matrix.to_Matrix()
    return [
        tuple(Fraction(int(dense[i, j].p), int(dense[i, j].q)) for j in range(dense.cols))
        for i in range(dense.rows)
    ]


def _scalar(x: object) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))  # type: ignore[attr-defined]


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Fraction:
    """Exact inner product of two equally long vectors."""
    return sum((Fraction(a) * b for a, b in zip(u, v, strict=True)), Fraction(0))


def transpose(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[Vector]:
    """Transpose a matrix given by rows; ``ncols`` fixes the shape of empty input."""
    return [vector(row[j] for row in rows) for j in range(ncols)]


def mat_vec(rows: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> Vector:
    """Return ``M @ v``."""
    return tuple(dot(row, v) for row in rows)


def vec_mat(v: Sequence[Scalar], rows: Sequence[Sequence[Scalar]], ncols: int) -> Vector:
    """Return ``v @ M`` where ``M`` has ``ncols`` columns."""
    out = [Fraction(0)] * ncols
    for coefficient, row in zip(v, rows, strict=True):
        if coefficient:
            for j, entry in enumerate(row):
                out[j] += coefficient * entry
    return tuple(out)


def rank(rows: Sequence[Sequence[Scalar]], ncols: int) -> int:
    """Rank of a rational matrix."""
    if not rows or ncols == 0:
        return 0
    return int(_to_domain(rows, ncols).rank())


def rref(rows: Sequence[Sequence[Scalar]], ncols: int) -> tuple[list[Vector], tuple[int, ...]]:
    """Reduced row echelon form.

    Returns:
        The nonzero rows of the reduced form and the pivot columns.
    """
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = _to_domain(rows, ncols).rref()
    dense = _from_domain(reduced)
    return dense[: len(pivots)], tuple(int(p) for p in pivots)


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[Vector]:
    """Basis of ``{x : M x = 0}``, one vector per free column, in column order."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * ncols
        x[free] = Fraction(1)
        for row, pivot in zip(reduced, pivots):
            x[pivot] = -row[free]
        basis.append(tuple(x))
    return basis


def solve(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar], ncols: int) -> Vector | None:
    """One solution of ``M x = b`` (free variables set to zero), or ``None``."""
    if not rows:
        return tuple(Fraction(0) for _ in range(ncols)) if not any(rhs) else None
    augmented = [list(row) + [b] for row, b in zip(rows, rhs, strict=True)]
    reduced, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pivot in zip(reduced, pivots):
        x[pivot] = row[ncols]
    return tuple(x)


def inverse(rows: Sequence[Sequence[Scalar]]) -> list[Vector]:
    """Inverse of a nonsingular square matrix."""
    n = len(rows)
    return _from_domain(_to_domain(rows, n).inv())


def determinant(rows: Sequence[Sequence[Scalar]]) -> Fraction:
    """Determinant of a square matrix (1 for the empty matrix)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    return _scalar(_to_domain(rows, n).det())


def is_integral(v: Iterable[Scalar]) -> bool:
    """True when every entry is an integer."""
    return all(Fraction(x).denominator == 1 for x in v)


def primitive(v: Sequence[Scalar]) -> IntVector:
    """Scale a rational vector to the primitive integer vector on its ray.

    The zero vector is returned unchanged (as integers).
    """
    fractions = vector(v)
    denominator = lcm(*(f.denominator for f in fractions)) if fractions else 1
    integers = [int(f * denominator) for f in fractions]
    divisor = gcd(*integers) if integers else 0
    if divisor == 0:
        return tuple(integers)
    return tuple(x // divisor for x in integers)


def canonical_sign(v: Sequence[int]) -> IntVector:
    """Flip ``v`` so that its first nonzero entry is positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def subspace_basis(vectors: Sequence[Sequence[Scalar]], ncols: int) -> list[IntVector]:
    """Canonical integer basis of the span of ``vectors``.

    The basis is the reduced row echelon form with every row scaled to a
    primitive integer vector, so equal subspaces give equal bases.
    """
    reduced, _ = rref(vectors, ncols)
    return [primitive(row) for row in reduced]


def orthogonal_projection(v: Sequence[Scalar], basis: Sequence[Sequence[Scalar]]) -> Vector:
    """Project ``v`` onto the orthogonal complement of ``span(basis)``."""
    x = vector(v)
    if not basis:
        return x
    gram = [[dot(a, b) for b in basis] for a in basis]
    coefficients = mat_vec(inverse(gram), [dot(a, x) for a in basis])
    correction = vec_mat(coefficients, basis, len(x))
    return tuple(a - b for a, b in zip(x, correction))


def affine_coordinates(point: Sequence[Scalar], vertices: Sequence[Sequence[Scalar]]) -> Vector | None:
    """Affine coordinates of ``point`` in terms of ``vertices``.

    Solves ``sum(c_i * v_i) = point`` with ``sum(c_i) = 1``. Returns
    ``None`` when ``point`` is outside the affine span; when the vertices
    are affinely dependent an arbitrary solution is returned.
    """
    dim = len(point)
    rows = [[Fraction(vertex[j]) for vertex in vertices] for j in range(dim)]
    rows.append([Fraction(1)] * len(vertices))
    return solve(rows, list(vector(point)) + [Fraction(1)], len(vertices))
