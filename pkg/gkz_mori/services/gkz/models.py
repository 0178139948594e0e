"""Input schemas for the GKZ service.

- ``PolytopeDocument`` -- the JSON polytope document, optionally with a paving
- ``JobSpec`` -- one requested computation and its options

Both are pydantic models; parse failures are turned into
:class:`~gkz_mori.errors.SchemaError` with the position pydantic reports.
"""

from __future__ import annotations

from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from gkz_mori.config import DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TRUNCATION
from gkz_mori.errors import SchemaError
from gkz_mori.services.gkz.config import Command

__all__ = ["JobSpec", "PolytopeDocument", "parse_document"]


class PolytopeDocument(BaseModel):
    """``{"dim": g, "vertices": [[...], ...], "cells": [[...], ...]}``.

    ``cells`` is optional; its entries index the lexicographically sorted
    lattice points of the polytope.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    dim: int = Field(ge=1)
    vertices: list[list[int]] = Field(min_length=1)
    cells: list[list[int]] | None = None

    @model_validator(mode="after")
    def _check_dimensions(self) -> PolytopeDocument:
        for i, vertex in enumerate(self.vertices):
            if len(vertex) != self.dim:
                raise ValueError(f"vertex {i} has {len(vertex)} coordinates, expected {self.dim}")
        for i, cell in enumerate(self.cells or []):
            if not cell or any(j < 0 for j in cell):
                raise ValueError(f"cell {i} must list non-negative point indices")
        return self


class JobSpec(BaseModel):
    """One computation request; identical specs give identical output."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    command: Command
    input: Path | None = None
    truncation: int = Field(default=DEFAULT_TRUNCATION, ge=1)
    samples: int = Field(default=DEFAULT_SAMPLES, ge=0)
    seed: int = DEFAULT_SEED
    oracle: bool = False


def _describe(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        location = ".".join(str(x) for x in error["loc"])
        parts.append(f"{location}: {error['msg']}" if location else error["msg"])
    return "; ".join(parts)


def parse_document(text: str) -> PolytopeDocument:
    """Parse and validate a polytope document.

    Raises:
        SchemaError: If ``text`` is not valid JSON (the message carries the
            line and column) or does not match the schema.
    """
    try:
        return PolytopeDocument.model_validate_json(text)
    except ValidationError as exc:
        raise SchemaError(_describe(exc)) from exc
