"""GKZ service configuration constants.

Exit codes, command names and JSON layout shared by the MCP tools and
the ``gkz`` command line. Project-wide defaults remain in
``gkz_mori.config``.
"""

from enum import StrEnum


class Command(StrEnum):
    """The computations offered by the CLI and the MCP tools."""

    POINTS = "points"
    TRIANGULATIONS = "triangulations"
    FAN = "fan"
    CHAMBER = "chamber"
    WALL = "wall"
    MORI_CHECK = "mori-check"
    FAMILY = "family"
    COCYCLE_CHECK = "cocycle-check"


EXIT_OK: int = 0
"""Successful run; the report is on stdout."""

EXIT_FAILURE: int = 1
"""Any other library error; an error document is on stdout."""

EXIT_NO_REGULAR_SIMPLEX: int = 2
"""The polytope contains no regular simplex, so ``Ψ`` is undefined."""

EXIT_SCHEMA_ERROR: int = 3
"""The input is empty, malformed JSON or violates the polytope schema."""

JSON_INDENT: int = 2
"""Indentation of emitted JSON documents."""

LIFT_RADIUS: int = 5
"""Random coefficients of sampled interior lifts are drawn from [0, R]."""

ERROR_PREFIX: str = "\u274c"
"""Marker prepended to error strings returned by MCP tools."""
