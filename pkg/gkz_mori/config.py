"""Global configuration for gkz_mori.

Contains only project-wide defaults. Settings that belong to the MCP
service or the CLI surface (exit codes, JSON layout) live in
``gkz_mori.services.gkz.config``.
"""

SERVER_NAME: str = "gkz-mori"
"""Name used when creating the FastMCP server instance."""

DEFAULT_TRUNCATION: int = 4
"""Total degree up to which graded monoids and structure constants are built."""

DEFAULT_HP_TRUNCATION: int = 2
"""Total degree of the pairs whose convexity defects generate H_P."""

DEFAULT_SAMPLES: int = 20
"""Interior lifts drawn per chamber when verifying Mori chambers."""

DEFAULT_SEED: int = 0
"""Seed for every random draw; identical seeds give identical reports."""

DEFAULT_FAN_DIRECTIONS: int = 1000
"""Random directions used to sample completeness of a secondary fan."""

SAMPLE_RADIUS: int = 12
"""Coordinates of random directions and lifts are drawn from [-R, R]."""

MAX_POINTS: int = 16
"""Largest lattice-point count accepted before enumeration is refused."""

LOG_LEVEL: str = "WARNING"
"""Default root log level for the CLI; ``--verbose`` lowers it to DEBUG."""

LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"
"""Format string handed to ``logging.basicConfig`` by the CLI."""
