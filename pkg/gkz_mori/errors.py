"""Exception hierarchy shared by every gkz_mori module.

Library code raises these; the MCP tools turn them into ``"❌ ..."``
strings and the CLI maps them onto exit codes.
"""

from __future__ import annotations

__all__ = [
    "GkzError",
    "ConeError",
    "InvalidPaving",
    "InvalidPolytope",
    "NoRegularSimplex",
    "NotATriangulation",
    "NotAdjacent",
    "NotConvex",
    "NotInterior",
    "NotMonotone",
    "SchemaError",
]


class GkzError(Exception):
    """Root of all errors raised by gkz_mori."""


class SchemaError(GkzError):
    """Input document is empty, malformed JSON, or violates the schema."""


class InvalidPolytope(GkzError):
    """Vertex list does not describe a full-dimensional lattice polytope."""


class InvalidPaving(GkzError):
    """A proposed cell complex violates one of the paving axioms."""


class NotATriangulation(GkzError):
    """An operation needing simplicial cells received a coarser paving."""


class NoRegularSimplex(GkzError):
    """No lattice simplex of the polytope has unimodular lifted vertices."""


class NotInterior(GkzError):
    """A lift lies on a wall of the chamber it was tested against."""


class NotAdjacent(GkzError):
    """Two chambers do not meet along a common facet."""


class NotConvex(GkzError):
    """A piecewise affine function has a bending parameter outside its monoid."""


class NotMonotone(GkzError):
    """A functional takes a negative value on a generator of its monoid."""


class ConeError(GkzError):
    """A cone operation received a cone outside its domain (e.g. with lineality)."""
