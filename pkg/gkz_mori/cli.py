"""The ``gkz`` command line.

Every command reads a polytope document from ``--input``, prints one JSON
report on stdout and exits with 0 on success, 2 when the polytope has no
regular simplex, 3 on schema errors and 1 on any other failure. Logs go
to stderr.
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from typing import Annotated

import typer

from gkz_mori.config import DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRUNCATION, LOG_FORMAT, LOG_LEVEL
from gkz_mori.services.gkz.config import EXIT_SCHEMA_ERROR, Command
from gkz_mori.services.gkz.formatter import GkzReportFormatter
from gkz_mori.services.gkz.jobs import run_job
from gkz_mori.services.gkz.models import JobSpec

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="gkz",
    help="Secondary fans, Mori chambers, wall crossings and toric families of lattice polytopes.",
    no_args_is_help=True,
    add_completion=False,
)

Input = Annotated[Path, typer.Option("--input", "-i", help="Polytope JSON document.")]
Truncation = Annotated[int, typer.Option(min=1, help="Largest total degree of graded monoids.")]
Samples = Annotated[int, typer.Option(min=0, help="Sampled lifts per chamber.")]
Seed = Annotated[int, typer.Option(help="Seed for every random draw.")]
Oracle = Annotated[bool, typer.Option("--oracle", help="Use brute-force enumeration.")]
Verbose = Annotated[bool, typer.Option("--verbose", "-v", help="Log at DEBUG level on stderr.")]

_formatter = GkzReportFormatter()


def _execute(command: Command, path: Path, truncation: int, samples: int, seed: int, oracle: bool, verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else LOG_LEVEL, format=LOG_FORMAT, stream=sys.stderr, force=True
    )
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        typer.echo(_formatter.format({"error": "SchemaError", "message": f"cannot read {path}: {exc.strerror}"}))
        raise typer.Exit(EXIT_SCHEMA_ERROR) from exc
    spec = JobSpec(command=command, input=path, truncation=truncation, samples=samples, seed=seed, oracle=oracle)
    result = run_job(spec, text)
    typer.echo(_formatter.format(result.document))
    logger.debug("%s finished with exit code %d", command, result.exit_code)
    raise typer.Exit(result.exit_code)


@app.command("points")
def points(
    input: Input,
    truncation: Truncation = DEFAULT_TRUNCATION,
    samples: Samples = DEFAULT_SAMPLES,
    seed: Seed = DEFAULT_SEED,
    oracle: Oracle = False,
    verbose: Verbose = False,
) -> None:
    """Lattice points, regular simplex and graded slices."""
    _execute(Command.POINTS, input, truncation, samples, seed, oracle, verbose)


@app.command("triangulations")
def triangulations(
    input: Input,
    truncation: Truncation = DEFAULT_TRUNCATION,
    samples: Samples = DEFAULT_SAMPLES,
    seed: Seed = DEFAULT_SEED,
    oracle: Oracle = False,
    verbose: Verbose = False,
) -> None:
    """Regular triangulations with witness lifts."""
    _execute(Command.TRIANGULATIONS, input, truncation, samples, seed, oracle, verbose)


@app.command("fan")
def fan(
    input: Input,
    truncation: Truncation = DEFAULT_TRUNCATION,
    samples: Samples = DEFAULT_SAMPLES,
    seed: Seed = DEFAULT_SEED,
    oracle: Oracle = False,
    verbose: Verbose = False,
) -> None:
    """The secondary fan: chambers, walls and adjacency."""
    _execute(Command.FAN, input, truncation, samples, seed, oracle, verbose)


@app.command("chamber")
def chamber(
    input: Input,
    truncation: Truncation = DEFAULT_TRUNCATION,
    samples: Samples = DEFAULT_SAMPLES,
    seed: Seed = DEFAULT_SEED,
    oracle: Oracle = False,
    verbose: Verbose = False,
) -> None:
    """Nef cones, effective curves and Mori verdicts per chamber."""
    _execute(Command.CHAMBER, input, truncation, samples, seed, oracle, verbose)


@app.command("wall")
def wall(
    input: Input,
    truncation: Truncation = DEFAULT_TRUNCATION,
    samples: Samples = DEFAULT_SAMPLES,
    seed: Seed = DEFAULT_SEED,
    oracle: Oracle = False,
    verbose: Verbose = False,
) -> None:
    """Divisorial and flipping walls with q_tau."""
    _execute(Command.WALL, input, truncation, samples, seed, oracle, verbose)


@app.command("mori-check")
def mori_check(
    input: Input,
    truncation: Truncation = DEFAULT_TRUNCATION,
    samples: Samples = DEFAULT_SAMPLES,
    seed: Seed = DEFAULT_SEED,
    oracle: Oracle = False,
    verbose: Verbose = False,
) -> None:
    """Mori chambers against GKZ chambers, and the moving cone."""
    _execute(Command.MORI_CHECK, input, truncation, samples, seed, oracle, verbose)


@app.command("family")
def family(
    input: Input,
    truncation: Truncation = DEFAULT_TRUNCATION,
    samples: Samples = DEFAULT_SAMPLES,
    seed: Seed = DEFAULT_SEED,
    oracle: Oracle = False,
    verbose: Verbose = False,
) -> None:
    """H_P, twisted monoids, theta sections and specialisations."""
    _execute(Command.FAMILY, input, truncation, samples, seed, oracle, verbose)


@app.command("cocycle-check")
def cocycle_check(
    input: Input,
    truncation: Truncation = DEFAULT_TRUNCATION,
    samples: Samples = DEFAULT_SAMPLES,
    seed: Seed = DEFAULT_SEED,
    oracle: Oracle = False,
    verbose: Verbose = False,
) -> None:
    """Antisymmetry and the cocycle identity of wall-crossing differences."""
    _execute(Command.COCYCLE_CHECK, input, truncation, samples, seed, oracle, verbose)


if __name__ == "__main__":
    app()
