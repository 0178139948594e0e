"""Input validation for GKZ tool parameters.

Keeps option checks out of the tool functions. Every helper returns a
human-readable error string, or ``None`` when validation passes.
"""

from __future__ import annotations

from gkz_mori.config import MAX_POINTS
from gkz_mori.pavings.polytope import LatticePolytope


def validate_options(truncation: int, samples: int) -> str | None:
    """Check the numeric options shared by all commands.

    Args:
        truncation: Largest total degree of graded monoids.
        samples: Number of sampled lifts per chamber.
    """
    if truncation < 1:
        return f"Truncation must be at least 1, got {truncation}."
    if samples < 0:
        return f"Sample count must not be negative, got {samples}."
    return None


def validate_polytope_size(polytope: LatticePolytope) -> str | None:
    """Refuse polytopes with more lattice points than enumeration can handle."""
    if polytope.n_points > MAX_POINTS:
        return f"Polytope has {polytope.n_points} lattice points; at most {MAX_POINTS} are supported."
    return None
