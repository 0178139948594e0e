"""Exact linear feasibility with Farkas/Motzkin certificates.

Constraints have the form ``a·x + c (>=, >, ==) 0`` over rational ``x``.
Feasibility is decided by a dense two-phase simplex over ``Fraction``
with Bland's rule; when a system is infeasible the alternative system of
the transposition theorem is solved with the same simplex so that the
caller always receives a checkable certificate.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from enum import StrEnum
from fractions import Fraction

from gkz_mori.kernel.linalg import Scalar, Vector, dot, vector

logger = logging.getLogger(__name__)

__all__ = ["FeasibilityResult", "LinearConstraint", "Relation", "certificate_is_valid", "lp_feasible"]


class Relation(StrEnum):
    """Comparison of ``a·x + c`` against zero."""

    GE = ">="
    GT = ">"
    EQ = "=="


@dataclass(frozen=True)
class LinearConstraint:
    """One linear constraint ``coefficients·x + constant (relation) 0``."""

    coefficients: Vector
    constant: Fraction = Fraction(0)
    relation: Relation = Relation.GE

    @classmethod
    def of(
        cls, coefficients: Sequence[Scalar], constant: Scalar = 0, relation: Relation = Relation.GE
    ) -> LinearConstraint:
        return cls(vector(coefficients), Fraction(constant), relation)

    @property
    def strict(self) -> bool:
        return self.relation is Relation.GT

    def value(self, x: Sequence[Scalar]) -> Fraction:
        return dot(self.coefficients, x) + self.constant

    def holds(self, x: Sequence[Scalar]) -> bool:
        v = self.value(x)
        if self.relation is Relation.GE:
            return v >= 0
        if self.relation is Relation.GT:
            return v > 0
        return v == 0


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of :func:`lp_feasible`: exactly one field is set.

    Attributes:
        witness: A rational point satisfying every constraint.
        certificate: Multipliers, one per constraint (nonnegative except
            on equalities), whose combination proves infeasibility.
    """

    witness: Vector | None = None
    certificate: Vector | None = None

    @property
    def feasible(self) -> bool:
        return self.witness is not None


def certificate_is_valid(constraints: Sequence[LinearConstraint], multipliers: Sequence[Scalar]) -> bool:
    """Check an infeasibility certificate exactly.

    The combination ``sum(l_i (a_i x + c_i))`` must have zero linear part
    and a constant that is negative, or zero while some strict constraint
    carries positive weight.
    """
    if not constraints:
        return False
    n = len(constraints[0].coefficients)
    for constraint, weight in zip(constraints, multipliers, strict=True):
        if constraint.relation is not Relation.EQ and weight < 0:
            return False
    combined = [
        sum((Fraction(w) * c.coefficients[j] for c, w in zip(constraints, multipliers)), Fraction(0))
        for j in range(n)
    ]
    if any(combined):
        return False
    constant = sum((Fraction(w) * c.constant for c, w in zip(constraints, multipliers)), Fraction(0))
    if constant < 0:
        return True
    return constant == 0 and any(c.strict and w > 0 for c, w in zip(constraints, multipliers))


class _Tableau:
    """Dense simplex tableau for ``A y = b, y >= 0`` with ``b >= 0``."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], width: int) -> None:
        self.width = width
        self.t: list[list[Fraction]] = []
        for row, b in zip(rows, rhs):
            if b < 0:
                row, b = [-x for x in row], -b
            self.t.append(list(row) + [b])
        self.basis: list[int] = []

    def pivot(self, r: int, c: int) -> None:
        row = self.t[r]
        p = row[c]
        self.t[r] = row = [x / p for x in row]
        for i, other in enumerate(self.t):
            if i != r and other[c] != 0:
                factor = other[c]
                self.t[i] = [x - factor * y for x, y in zip(other, row)]
        self.basis[r] = c

    def optimise(self, cost: Sequence[Fraction], columns: range) -> None:
        """Maximise ``cost·y`` with Bland's rule; the objective must be bounded."""
        while True:
            entering = None
            for j in columns:
                if j in self.basis:
                    continue
                reduced = cost[j] - sum((cost[b] * row[j] for b, row in zip(self.basis, self.t)), Fraction(0))
                if reduced > 0:
                    entering = j
                    break
            if entering is None:
                return
            leaving, best = None, None
            for i, row in enumerate(self.t):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leaving]):
                        leaving, best = i, ratio
            if leaving is None:
                raise ArithmeticError("unbounded objective in a bounded feasibility program")
            self.pivot(leaving, entering)

    def values(self) -> list[Fraction]:
        y = [Fraction(0)] * self.width
        for b, row in zip(self.basis, self.t):
            if b < self.width:
                y[b] = row[-1]
        return y


def _solve_standard_form(
    rows: list[list[Fraction]], rhs: list[Fraction], width: int, objective: Sequence[Fraction] | None
) -> list[Fraction] | None:
    """Maximise ``objective·y`` over ``A y = b, y >= 0``; ``None`` when infeasible."""
    m = len(rows)
    tableau = _Tableau(rows, rhs, width)
    for i, row in enumerate(tableau.t):
        tableau.t[i] = row[:-1] + [Fraction(int(k == i)) for k in range(m)] + [row[-1]]
    tableau.basis = [width + i for i in range(m)]
    phase_one = [Fraction(0)] * width + [Fraction(-1)] * m
    tableau.optimise(phase_one, range(width + m))
    if any(row[-1] != 0 for b, row in zip(tableau.basis, tableau.t) if b >= width):
        return None
    redundant = []
    for i, b in enumerate(tableau.basis):
        if b >= width:
            column = next((j for j in range(width) if tableau.t[i][j] != 0), None)
            if column is None:
                redundant.append(i)
            else:
                tableau.pivot(i, column)
    for i in reversed(redundant):
        del tableau.t[i]
        del tableau.basis[i]
    tableau.t = [row[:width] + [row[-1]] for row in tableau.t]
    if objective is not None:
        tableau.optimise(objective, range(width))
    return tableau.values()


def _maximise_slack(
    constraints: Sequence[LinearConstraint], weighted: Sequence[bool], n: int
) -> tuple[Vector, Fraction] | None:
    """Maximise ``t <= 1`` subject to ``a·x + c - w t >= 0`` (``w`` from ``weighted``)."""
    # Variables: x+ (n), x- (n), t, one slack per inequality, slack for t <= 1.
    inequalities = [i for i, c in enumerate(constraints) if c.relation is not Relation.EQ]
    width = 2 * n + 1 + len(inequalities) + 1
    t_col = 2 * n
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    slack = t_col + 1
    for i, constraint in enumerate(constraints):
        row = [Fraction(0)] * width
        for j, a in enumerate(constraint.coefficients):
            row[j], row[n + j] = a, -a
        if constraint.relation is not Relation.EQ:
            if weighted[i]:
                row[t_col] = Fraction(-1)
            row[slack] = Fraction(-1)
            slack += 1
        rows.append(row)
        rhs.append(-constraint.constant)
    bound = [Fraction(0)] * width
    bound[t_col], bound[width - 1] = Fraction(1), Fraction(1)
    rows.append(bound)
    rhs.append(Fraction(1))
    objective = [Fraction(0)] * width
    objective[t_col] = Fraction(1)
    y = _solve_standard_form(rows, rhs, width, objective)
    if y is None:
        return None
    x = tuple(y[j] - y[n + j] for j in range(n))
    return x, y[t_col]


def _certificate(constraints: Sequence[LinearConstraint], n: int) -> Vector | None:
    """Solve the alternative system for multipliers proving infeasibility."""
    # Variables: one per constraint (equalities split in +/-), then mu.
    columns: list[tuple[int, int]] = []
    for i, constraint in enumerate(constraints):
        columns.append((i, 1))
        if constraint.relation is Relation.EQ:
            columns.append((i, -1))
    width = len(columns) + 1
    mu = width - 1
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for j in range(n):
        rows.append([sign * constraints[i].coefficients[j] for i, sign in columns] + [Fraction(0)])
        rhs.append(Fraction(0))
    rows.append([sign * constraints[i].constant for i, sign in columns] + [Fraction(1)])
    rhs.append(Fraction(0))
    normaliser = [Fraction(1) if constraints[i].strict else Fraction(0) for i, _ in columns] + [Fraction(1)]
    rows.append(normaliser)
    rhs.append(Fraction(1))
    y = _solve_standard_form(rows, rhs, width, None)
    if y is None:
        return None
    multipliers = [Fraction(0)] * len(constraints)
    for (i, sign), value in zip(columns, y[:mu]):
        multipliers[i] += sign * value
    return tuple(multipliers)


def lp_feasible(constraints: Sequence[LinearConstraint], dimension: int | None = None) -> FeasibilityResult:
    """Decide feasibility of a system of linear constraints exactly.

    The first attempt maximises a common slack on every inequality, so a
    system with nonempty interior gets a central-ish witness (the box
    ``0 <= x <= 1`` yields ``x = 1/2``). When that slack is zero only the
    strict constraints are required to keep positive slack.

    Args:
        constraints: The system; all coefficient vectors share one length.
        dimension: Number of variables, required when ``constraints`` is empty.

    Returns:
        A :class:`FeasibilityResult` holding either a witness or a
        certificate, never both.
    """
    n = dimension if dimension is not None else len(constraints[0].coefficients)
    if not constraints:
        return FeasibilityResult(witness=tuple(Fraction(0) for _ in range(n)))

    all_inequalities = [c.relation is not Relation.EQ for c in constraints]
    attempt = _maximise_slack(constraints, all_inequalities, n)
    if attempt is not None and attempt[1] > 0:
        return FeasibilityResult(witness=attempt[0])

    strict_only = [c.strict for c in constraints]
    if attempt is not None:
        if not any(strict_only):
            return FeasibilityResult(witness=attempt[0])
        second = _maximise_slack(constraints, strict_only, n)
        if second is not None and second[1] > 0:
            return FeasibilityResult(witness=second[0])

    certificate = _certificate(constraints, n)
    if certificate is None:
        raise ArithmeticError("no witness and no certificate; the simplex is inconsistent")
    logger.debug("infeasible system of %d constraints", len(constraints))
    return FeasibilityResult(certificate=certificate)
