"""Tests for the ``gkz`` command line."""

import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from gkz_mori.cli import app
from gkz_mori.services.gkz.config import Command
from gkz_mori.services.gkz.jobs import JOBS
from tests.conftest import DOUBLE_SIMPLEX_VERTICES, REEVE_VERTICES, SEGMENT_VERTICES, SQUARE_VERTICES, document

runner = CliRunner()

COMMANDS = ["points", "triangulations", "fan", "chamber", "wall", "mori-check", "family", "cocycle-check"]


def _write(tmp_path: Path, text: str, name: str = "polytope.json") -> Path:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestCommands:
    """Each command prints one JSON document and exits 0."""

    @pytest.mark.parametrize("command", COMMANDS)
    def test_segment(self, command: str, tmp_path: Path) -> None:
        path = _write(tmp_path, document(SEGMENT_VERTICES))
        result = runner.invoke(app, [command, "--input", str(path), "--samples", "3", "--truncation", "2"])
        assert result.exit_code == 0, result.output
        report = json.loads(result.stdout)
        assert report["n_points"] == 3

    def test_wall_prints_fractions(self, tmp_path: Path) -> None:
        path = _write(tmp_path, document(SQUARE_VERTICES))
        result = runner.invoke(app, ["wall", "-i", str(path)])
        assert result.exit_code == 0
        assert '"-1/2"' in result.stdout

    def test_oracle_flag(self, tmp_path: Path) -> None:
        path = _write(tmp_path, document(DOUBLE_SIMPLEX_VERTICES))
        result = runner.invoke(app, ["triangulations", "-i", str(path), "--oracle"])
        assert json.loads(result.stdout)["method"] == "oracle"

    def test_identical_runs_give_identical_output(self, tmp_path: Path) -> None:
        path = _write(tmp_path, document(SQUARE_VERTICES))
        args = ["mori-check", "-i", str(path), "--samples", "4", "--seed", "9"]
        assert runner.invoke(app, args).stdout == runner.invoke(app, args).stdout

    def test_help_lists_commands(self) -> None:
        result = runner.invoke(app, ["--help"])
        assert result.exit_code == 0
        for command in COMMANDS:
            assert command in result.stdout


class TestExitCodes:
    """Failures exit with 1, 2 or 3 and still print a JSON document."""

    def test_no_regular_simplex(self, tmp_path: Path) -> None:
        path = _write(tmp_path, document(REEVE_VERTICES))
        result = runner.invoke(app, ["fan", "-i", str(path)])
        assert result.exit_code == 2
        assert json.loads(result.stdout)["error"] == "NoRegularSimplex"

    def test_points_without_regular_simplex_succeeds(self, tmp_path: Path) -> None:
        path = _write(tmp_path, document(REEVE_VERTICES))
        result = runner.invoke(app, ["points", "-i", str(path), "--truncation", "1"])
        assert result.exit_code == 0
        assert json.loads(result.stdout)["regular_simplex"] is None

    def test_empty_file(self, tmp_path: Path) -> None:
        path = _write(tmp_path, "")
        result = runner.invoke(app, ["points", "-i", str(path)])
        assert result.exit_code == 3
        assert "line" in json.loads(result.stdout)["message"]

    def test_schema_violation(self, tmp_path: Path) -> None:
        path = _write(tmp_path, json.dumps({"dim": 3, "vertices": [[0, 0], [1, 1]]}))
        result = runner.invoke(app, ["fan", "-i", str(path)])
        assert result.exit_code == 3

    def test_missing_file(self, tmp_path: Path) -> None:
        result = runner.invoke(app, ["points", "-i", str(tmp_path / "absent.json")])
        assert result.exit_code == 3
        assert json.loads(result.stdout)["error"] == "SchemaError"

    def test_invalid_paving(self, tmp_path: Path) -> None:
        path = _write(tmp_path, document(SQUARE_VERTICES, [[0, 1, 2]]))
        result = runner.invoke(app, ["family", "-i", str(path)])
        assert result.exit_code == 1
        assert '"error": "InvalidPaving"' in result.stdout

    def test_negative_samples_rejected_by_typer(self, tmp_path: Path) -> None:
        path = _write(tmp_path, document(SEGMENT_VERTICES))
        result = runner.invoke(app, ["mori-check", "-i", str(path), "--samples", "-1"])
        assert result.exit_code != 0

    def test_unexpected_error_prints_a_document(self, tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
        def broken(*_: object) -> dict:
            raise KeyError((1, 1))

        monkeypatch.setitem(JOBS, Command.FAN, broken)
        path = _write(tmp_path, document(SEGMENT_VERTICES))
        result = runner.invoke(app, ["fan", "-i", str(path)])
        assert result.exit_code == 1
        assert '"error": "KeyError"' in result.stdout
