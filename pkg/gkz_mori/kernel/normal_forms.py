"""Integer matrices, Hermite and Smith normal forms, and the lattice
computations built on them (kernels, cokernels, saturations, indices).

The Smith form follows the classical alternating row/column clearing
with 2x2 unimodular gcd steps, extended by a divisibility pass; all
transforms are tracked together with their inverses so that kernels and
saturations can be read off directly.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm, prod

from gkz_mori.kernel.linalg import IntVector, Scalar

logger = logging.getLogger(__name__)

__all__ = [
    "IntMatrix",
    "NormalForms",
    "cokernel_invariants",
    "exgcd",
    "hermite_smith",
    "index_in_saturation",
    "integer_kernel",
    "lattice_basis",
    "left_kernel",
    "rational_lattice_basis",
    "saturation_basis",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular integer matrix.

    Attributes:
        rows: Row tuples, all of length ``cols``.
        cols: Column count (kept explicitly so 0-row matrices have a shape).
    """

    rows: tuple[IntVector, ...]
    cols: int

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != self.cols:
                raise ValueError(f"row {row} does not have {self.cols} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        """Build a matrix from nested sequences of integers."""
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(tuple(tuple(int(x) for x in row) for row in rows), width)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.cols

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(tuple(row[j] for row in self.rows) for j in range(self.cols)), len(self.rows))

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != len(other.rows):
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        columns = other.transpose().rows
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in columns) for row in self.rows),
            other.cols,
        )

    def determinant(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        n, m = self.shape
        if n != m:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(row) for row in self.rows]
        sign, previous = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
            previous = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        n, m = self.shape
        return n == m and abs(self.determinant()) == 1


@dataclass(frozen=True)
class NormalForms:
    """Hermite and Smith forms of a matrix together with their transforms.

    Attributes:
        hermite: Row-style Hermite form ``H = U @ M`` (upper echelon,
            positive pivots, entries above a pivot reduced into
            ``[0, pivot)``).
        row_transform: The unimodular ``U``.
        smith: Diagonal ``D = S @ M @ T`` with ``d_1 | d_2 | ...`` and
            nonnegative diagonal.
        left: The unimodular ``S``.
        right: The unimodular ``T``.
        left_inverse: ``S^-1``.
        right_inverse: ``T^-1``.
        rank: Number of nonzero invariant factors.
    """

    hermite: IntMatrix
    row_transform: IntMatrix
    smith: IntMatrix
    left: IntMatrix
    right: IntMatrix
    left_inverse: IntMatrix
    right_inverse: IntMatrix
    rank: int

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nonzero diagonal entries of the Smith form."""
        return tuple(self.smith.rows[i][i] for i in range(self.rank))


def exgcd(a: int, b: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Extended gcd as a determinant-one 2x2 matrix.

    Returns:
        ``M`` with ``det M = 1`` and ``M @ (a, b) = (gcd(a, b), 0)``. When
        ``a`` divides ``b`` the top-right entry is 0.
    """
    a_sign = -1 if a < 0 else 1
    b_sign = -1 if b < 0 else 1
    a, b = abs(a), abs(b)
    # Euclid on the column (a, b) augmented by the identity, rows swapped first.
    m = [[b, 0, 1], [a, 1, 0]]
    while m[1][0] != 0:
        q = m[0][0] // m[1][0]
        m[0] = [x - q * y for x, y in zip(m[0], m[1])]
        m[0], m[1] = m[1], m[0]
    g = m[0][0]
    top = (m[0][1] * a_sign, m[0][2] * b_sign)
    if g == 0:
        return (1, 0), (0, 1)
    bottom = (-b_sign * b // g, a_sign * a // g)
    return top, bottom


def _inverse_2x2(m: tuple[tuple[int, int], tuple[int, int]]) -> tuple[tuple[int, int], tuple[int, int]]:
    (p, q), (r, s) = m
    return (s, -q), (-r, p)


class _Workspace:
    """Mutable matrices updated in lockstep by the normal-form algorithms."""

    def __init__(self, matrix: IntMatrix) -> None:
        n, m = matrix.shape
        self.n, self.m = n, m
        self.d = [list(row) for row in matrix.rows]
        self.s = [[int(i == j) for j in range(n)] for i in range(n)]
        self.s_inv = [[int(i == j) for j in range(n)] for i in range(n)]
        self.t = [[int(i == j) for j in range(m)] for i in range(m)]
        self.t_inv = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_op(self, i: int, j: int, op: tuple[tuple[int, int], tuple[int, int]]) -> None:
        """Replace rows (i, j) by ``op @ rows``; keeps ``D = S M T``."""
        (p, q), (r, s) = op
        for mat in (self.d, self.s):
            mat[i], mat[j] = (
                [p * x + q * y for x, y in zip(mat[i], mat[j])],
                [r * x + s * y for x, y in zip(mat[i], mat[j])],
            )
        (pi, qi), (ri, si) = _inverse_2x2(op)
        for row in self.s_inv:
            row[i], row[j] = row[i] * pi + row[j] * ri, row[i] * qi + row[j] * si

    def col_op(self, i: int, j: int, op: tuple[tuple[int, int], tuple[int, int]]) -> None:
        """Replace columns (i, j) by ``cols @ op``; keeps ``D = S M T``."""
        (p, q), (r, s) = op
        for mat in (self.d, self.t):
            for row in mat:
                row[i], row[j] = row[i] * p + row[j] * r, row[i] * q + row[j] * s
        (pi, qi), (ri, si) = _inverse_2x2(op)
        self.t_inv[i], self.t_inv[j] = (
            [pi * x + qi * y for x, y in zip(self.t_inv[i], self.t_inv[j])],
            [ri * x + si * y for x, y in zip(self.t_inv[i], self.t_inv[j])],
        )

    def negate_row(self, i: int) -> None:
        self.d[i] = [-x for x in self.d[i]]
        self.s[i] = [-x for x in self.s[i]]
        for row in self.s_inv:
            row[i] = -row[i]

    def swap(self, i: int, j: int, rows: bool) -> None:
        if i == j:
            return
        op = ((0, 1), (-1, 0))
        if rows:
            self.row_op(i, j, op)
        else:
            self.col_op(i, j, ((0, -1), (1, 0)))


def _hermite(matrix: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    ws = _Workspace(matrix)
    n, m = ws.n, ws.m
    row = 0
    for col in range(m):
        if row >= n:
            break
        for other in range(row + 1, n):
            if ws.d[other][col] != 0:
                ws.row_op(row, other, exgcd(ws.d[row][col], ws.d[other][col]))
        pivot = ws.d[row][col]
        if pivot == 0:
            continue
        if pivot < 0:
            ws.negate_row(row)
            pivot = -pivot
        for above in range(row):
            q = ws.d[above][col] // pivot
            if q:
                ws.row_op(above, row, ((1, -q), (0, 1)))
        row += 1
    hermite = IntMatrix.from_rows(ws.d, m)
    return hermite, IntMatrix.from_rows(ws.s, n)


def _smith(matrix: IntMatrix) -> _Workspace:
    ws = _Workspace(matrix)
    n, m = ws.n, ws.m

    def clear_col(i: int) -> bool:
        if all(ws.d[j][i] == 0 for j in range(i + 1, n)):
            return False
        for j in range(i + 1, n):
            ws.row_op(i, j, exgcd(ws.d[i][i], ws.d[j][i]))
        return True

    def clear_row(i: int) -> bool:
        if all(ws.d[i][j] == 0 for j in range(i + 1, m)):
            return False
        for j in range(i + 1, m):
            top, bottom = exgcd(ws.d[i][i], ws.d[i][j])
            ws.col_op(i, j, ((top[0], bottom[0]), (top[1], bottom[1])))
        return True

    size = min(n, m)
    for i in range(size):
        # Bring a nonzero entry of the remaining block to (i, i).
        if ws.d[i][i] == 0:
            found = next(((r, c) for r in range(i, n) for c in range(i, m) if ws.d[r][c] != 0), None)
            if found is None:
                break
            ws.swap(i, found[0], rows=True)
            ws.swap(i, found[1], rows=False)
        clear_col(i)
        while clear_row(i) and clear_col(i):
            pass

    diagonal = [ws.d[i][i] for i in range(size)]
    nonzero = [i for i in range(size) if diagonal[i] != 0]
    for i in nonzero:
        if ws.d[i][i] < 0:
            ws.negate_row(i)
    # Divisibility pass: diag(a, b) -> diag(gcd, lcm) with unimodular steps.
    changed = True
    while changed:
        changed = False
        for x in range(len(nonzero)):
            for y in range(x + 1, len(nonzero)):
                i, j = nonzero[x], nonzero[y]
                a, b = ws.d[i][i], ws.d[j][j]
                if b % a == 0:
                    continue
                g = gcd(a, b)
                (u, v), _ = exgcd(a, b)
                ws.row_op(i, j, ((u, v), (-b // g, a // g)))
                ws.col_op(i, j, ((1, -v * b // g), (1, u * a // g)))
                if ws.d[j][j] < 0:
                    ws.negate_row(j)
                changed = True
    return ws


def hermite_smith(matrix: IntMatrix) -> NormalForms:
    """Compute the Hermite and Smith normal forms of ``matrix``.

    Args:
        matrix: Any nonempty integer matrix.

    Returns:
        A :class:`NormalForms` bundle; every transform is unimodular.

    Raises:
        ValueError: If ``matrix`` has no entries.
    """
    n, m = matrix.shape
    if n == 0 or m == 0:
        raise ValueError("hermite_smith needs a nonempty matrix")
    hermite, row_transform = _hermite(matrix)
    ws = _smith(matrix)
    smith = IntMatrix.from_rows(ws.d, m)
    rank = sum(1 for i in range(min(n, m)) if smith.rows[i][i] != 0)
    logger.debug("normal forms of %dx%d matrix: rank %d", n, m, rank)
    return NormalForms(
        hermite=hermite,
        row_transform=row_transform,
        smith=smith,
        left=IntMatrix.from_rows(ws.s, n),
        right=IntMatrix.from_rows(ws.t, m),
        left_inverse=IntMatrix.from_rows(ws.s_inv, n),
        right_inverse=IntMatrix.from_rows(ws.t_inv, m),
        rank=rank,
    )


def integer_kernel(rows: Sequence[Sequence[int]], cols: int) -> list[IntVector]:
    """Basis of the lattice ``{x in Z^cols : M x = 0}``."""
    if not rows:
        return [tuple(int(i == j) for j in range(cols)) for i in range(cols)]
    forms = hermite_smith(IntMatrix.from_rows(rows, cols))
    columns = forms.right.transpose().rows
    return lattice_basis(columns[forms.rank :], cols)


def left_kernel(rows: Sequence[Sequence[int]], cols: int) -> list[IntVector]:
    """Basis of the lattice ``{y : y M = 0}``, canonicalised by Hermite form."""
    n = len(rows)
    if cols == 0:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    forms = hermite_smith(IntMatrix.from_rows(rows, cols))
    return lattice_basis(forms.left.rows[forms.rank :], n)


def lattice_basis(generators: Sequence[Sequence[int]], cols: int) -> list[IntVector]:
    """Hermite basis (nonzero Hermite rows) of the lattice spanned by ``generators``."""
    if not generators or cols == 0:
        return []
    forms = hermite_smith(IntMatrix.from_rows(generators, cols))
    return [row for row in forms.hermite.rows if any(row)]


def rational_lattice_basis(generators: Sequence[Sequence[Scalar]], cols: int) -> list[tuple[Fraction, ...]]:
    """Hermite basis of the lattice spanned by rational vectors."""
    if not generators:
        return []
    denominator = lcm(*(Fraction(x).denominator for row in generators for x in row))
    scaled = [[int(Fraction(x) * denominator) for x in row] for row in generators]
    return [tuple(Fraction(x, denominator) for x in row) for row in lattice_basis(scaled, cols)]


def saturation_basis(generators: Sequence[Sequence[int]], cols: int) -> list[IntVector]:
    """Basis of ``span_Q(generators) ∩ Z^cols``, canonicalised by Hermite form."""
    if not generators or cols == 0:
        return []
    forms = hermite_smith(IntMatrix.from_rows(generators, cols))
    return lattice_basis(forms.right_inverse.rows[: forms.rank], cols)


def index_in_saturation(generators: Sequence[Sequence[int]], cols: int) -> int:
    """Index of the lattice spanned by ``generators`` in its saturation."""
    if not generators or cols == 0:
        return 1
    return prod(hermite_smith(IntMatrix.from_rows(generators, cols)).invariant_factors)


def cokernel_invariants(rows: Sequence[Sequence[int]], cols: int) -> tuple[int, tuple[int, ...]]:
    """Structure of ``Z^rows / M Z^cols`` for the column span of ``M``.

    Returns:
        ``(free_rank, torsion)`` where ``torsion`` lists the invariant
        factors larger than one.
    """
    n = len(rows)
    if n == 0:
        return 0, ()
    if cols == 0:
        return n, ()
    forms = hermite_smith(IntMatrix.from_rows(rows, cols))
    return n - forms.rank, tuple(d for d in forms.invariant_factors if d > 1)
