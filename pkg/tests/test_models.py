"""Tests for gkz_mori.services.gkz.models and validation."""

import json

import pytest
from pydantic import ValidationError

from gkz_mori.errors import SchemaError
from gkz_mori.pavings import LatticePolytope
from gkz_mori.services.gkz.config import Command
from gkz_mori.services.gkz.models import JobSpec, parse_document
from gkz_mori.services.gkz.validation import validate_options, validate_polytope_size
from tests.conftest import SQUARE_VERTICES, document


class TestParseDocument:
    """Polytope documents and their schema errors."""

    def test_vertices_only(self) -> None:
        parsed = parse_document(document(SQUARE_VERTICES))
        assert parsed.dim == 2
        assert parsed.vertices == SQUARE_VERTICES
        assert parsed.cells is None

    def test_with_cells(self) -> None:
        parsed = parse_document(document(SQUARE_VERTICES, [[0, 1, 3], [0, 2, 3]]))
        assert parsed.cells == [[0, 1, 3], [0, 2, 3]]

    def test_empty_text(self) -> None:
        with pytest.raises(SchemaError, match="line"):
            parse_document("")

    def test_malformed_json_reports_position(self) -> None:
        with pytest.raises(SchemaError, match="line 1 column"):
            parse_document('{"dim": 2, "vertices": [[0, 0]')

    def test_dimension_mismatch(self) -> None:
        with pytest.raises(SchemaError, match="vertex 1 has 1 coordinates"):
            parse_document(json.dumps({"dim": 2, "vertices": [[0, 0], [1]]}))

    def test_unknown_key(self) -> None:
        with pytest.raises(SchemaError, match="colour"):
            parse_document(json.dumps({"dim": 1, "vertices": [[0], [1]], "colour": "red"}))

    def test_missing_vertices(self) -> None:
        with pytest.raises(SchemaError, match="vertices"):
            parse_document(json.dumps({"dim": 1}))

    def test_non_positive_dimension(self) -> None:
        with pytest.raises(SchemaError, match="dim"):
            parse_document(json.dumps({"dim": 0, "vertices": [[]]}))

    def test_negative_cell_index(self) -> None:
        with pytest.raises(SchemaError, match="non-negative"):
            parse_document(json.dumps({"dim": 1, "vertices": [[0], [2]], "cells": [[0, -1]]}))

    def test_non_integral_coordinates(self) -> None:
        with pytest.raises(SchemaError):
            parse_document(json.dumps({"dim": 1, "vertices": [[0.5], [2]]}))


class TestJobSpec:
    """Command options."""

    def test_defaults(self) -> None:
        spec = JobSpec(command=Command.FAN)
        assert spec.truncation == 4
        assert spec.samples == 20
        assert spec.seed == 0
        assert not spec.oracle

    def test_command_from_string(self) -> None:
        assert JobSpec(command="mori-check").command is Command.MORI_CHECK

    def test_truncation_must_be_positive(self) -> None:
        with pytest.raises(ValidationError):
            JobSpec(command=Command.FAMILY, truncation=0)

    def test_unknown_command_is_rejected(self) -> None:
        with pytest.raises(ValidationError, match="command"):
            JobSpec(command="flop")


class TestValidation:
    """Validation helpers return a message or None."""

    def test_options(self) -> None:
        assert validate_options(4, 20) is None
        assert "Truncation" in validate_options(0, 20)
        assert "Sample" in validate_options(4, -1)

    def test_polytope_size(self, square: LatticePolytope) -> None:
        assert validate_polytope_size(square) is None
        large = LatticePolytope.from_vertices([[0, 0], [5, 0], [0, 5]])
        assert "21 lattice points" in validate_polytope_size(large)
