"""GKZ service plugin.

Exposes :class:`GkzService`, which satisfies the
:class:`~gkz_mori.services.base.ServicePlugin` protocol and registers
one MCP tool per ``gkz`` command. Every tool takes the polytope JSON
document as a string and returns the same JSON report the CLI prints.
"""

import functools
from typing import Any

from anyio import to_thread
from mcp.server.fastmcp import FastMCP

from gkz_mori.config import DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRUNCATION
from gkz_mori.services.gkz.config import ERROR_PREFIX, EXIT_OK, Command
from gkz_mori.services.gkz.formatter import GkzReportFormatter
from gkz_mori.services.gkz.jobs import run_job
from gkz_mori.services.gkz.models import JobSpec
from gkz_mori.services.gkz.validation import validate_options

__all__ = ["GkzService"]


class GkzService:
    """GKZ ServicePlugin -- registers the computation tools.

    Composes the job runner with a :class:`GkzReportFormatter`.
    """

    def __init__(self) -> None:
        self._formatter = GkzReportFormatter()

    def render(
        self,
        command: Command,
        polytope: str,
        *,
        truncation: int = DEFAULT_TRUNCATION,
        samples: int = DEFAULT_SAMPLES,
        seed: int = DEFAULT_SEED,
        oracle: bool = False,
    ) -> str:
        """Run *command* on a polytope document and return JSON or a ``❌`` message."""
        error = validate_options(truncation, samples)
        if error:
            return f"{ERROR_PREFIX} {error}"
        spec = JobSpec(command=command, truncation=truncation, samples=samples, seed=seed, oracle=oracle)
        result = run_job(spec, polytope)
        if result.exit_code != EXIT_OK:
            return f"{ERROR_PREFIX} {result.document['error']}: {result.document['message']}"
        return self._formatter.format(result.document)

    def register(self, mcp: FastMCP) -> None:
        """Register the GKZ tools.

        Each tool runs its job on an anyio worker thread.

        Args:
            mcp: The FastMCP server instance to register onto.
        """
        render = self.render

        async def run(command: Command, polytope: str, **options: Any) -> str:
            return await to_thread.run_sync(functools.partial(render, command, polytope, **options))

        @mcp.tool()
        async def lattice_points(polytope: str, truncation: int = DEFAULT_TRUNCATION) -> str:
            """List the lattice points of a polytope, its regular simplex and graded slices.

            ``polytope`` is a JSON document ``{"dim": g, "vertices": [[...], ...]}``.
            """
            return await run(Command.POINTS, polytope, truncation=truncation)

        @mcp.tool()
        async def regular_triangulations(polytope: str, oracle: bool = False) -> str:
            """Enumerate the regular triangulations of a polytope with interior witness lifts.

            Set ``oracle`` to use exhaustive search instead of the flip-graph traversal.
            """
            return await run(Command.TRIANGULATIONS, polytope, oracle=oracle)

        @mcp.tool()
        async def secondary_fan(polytope: str, seed: int = DEFAULT_SEED, oracle: bool = False) -> str:
            """Compute the secondary fan: chambers, walls, adjacency and a completeness sample."""
            return await run(Command.FAN, polytope, seed=seed, oracle=oracle)

        @mcp.tool()
        async def chamber_report(polytope: str, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> str:
            """Report nef cones, effective curves, curve classes and the theta section per chamber."""
            return await run(Command.CHAMBER, polytope, samples=samples, seed=seed)

        @mcp.tool()
        async def wall_report(polytope: str) -> str:
            """Classify every wall of the secondary fan as divisorial or flipping and compute q_tau."""
            return await run(Command.WALL, polytope)

        @mcp.tool()
        async def mori_check(polytope: str, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> str:
            """Check that sampled divisors induce their chamber's triangulation and no other."""
            return await run(Command.MORI_CHECK, polytope, samples=samples, seed=seed)

        @mcp.tool()
        async def family_report(polytope: str, truncation: int = DEFAULT_TRUNCATION) -> str:
            """Build H_P, the twisted monoid and its specialisation for a paving or every triangulation.

            Add ``"cells": [[...], ...]`` (indices into the sorted lattice points)
            to the document to pick a paving.
            """
            return await run(Command.FAMILY, polytope, truncation=truncation)

        @mcp.tool()
        async def cocycle_report(polytope: str) -> str:
            """Check antisymmetry and the cocycle identity of the wall-crossing differences."""
            return await run(Command.COCYCLE_CHECK, polytope)
