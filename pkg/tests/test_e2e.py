"""End-to-end tests for the MCP server.

Verifies the full server boots correctly, all tools are registered
with expected names, and each tool returns the JSON report (or a
``❌`` error string) when called through the FastMCP interface.
"""

import json
import threading

import pytest

from tests.conftest import REEVE_VERTICES, SEGMENT_VERTICES, SQUARE_VERTICES, document

EXPECTED_TOOL_NAMES: set[str] = {
    "lattice_points",
    "regular_triangulations",
    "secondary_fan",
    "chamber_report",
    "wall_report",
    "mori_check",
    "family_report",
    "cocycle_report",
}


@pytest.fixture()
def mcp_server():
    """Provide a fresh FastMCP server instance with all plugins applied.

    Builds a new server each time so tests don't share mutable state
    from the module-level singleton.
    """
    from mcp.server.fastmcp import FastMCP

    from gkz_mori.config import SERVER_NAME
    from gkz_mori.services.gkz import GkzService
    from gkz_mori.services.registry import ServiceRegistry

    server = FastMCP(SERVER_NAME)
    registry = ServiceRegistry()
    registry.add(GkzService())
    registry.apply_all(server)
    return server


async def _call(server, name: str, arguments: dict) -> str:
    result_tuple = await server.call_tool(name, arguments)
    return result_tuple[0][0].text


class TestServerBootstrap:
    """Verify the server boots and all expected tools exist."""

    @pytest.mark.asyncio
    async def test_all_tools_registered(self, mcp_server) -> None:
        tools = await mcp_server.list_tools()
        tool_names = {t.name for t in tools}
        assert tool_names == EXPECTED_TOOL_NAMES

    @pytest.mark.asyncio
    async def test_tools_take_a_polytope(self, mcp_server) -> None:
        tools = await mcp_server.list_tools()
        for tool in tools:
            assert "polytope" in tool.inputSchema["properties"]

    def test_module_level_server(self) -> None:
        from gkz_mori.server import mcp

        assert mcp.name == "gkz-mori"


@pytest.mark.asyncio
class TestToolExecution:
    """Call each tool through the FastMCP interface."""

    async def test_lattice_points(self, mcp_server) -> None:
        text = await _call(mcp_server, "lattice_points", {"polytope": document(SEGMENT_VERTICES), "truncation": 2})
        report = json.loads(text)
        assert report["points"] == [[0], [1], [2]]
        assert report["graded_slices"] == {"0": 1, "1": 3, "2": 5}

    async def test_regular_triangulations(self, mcp_server) -> None:
        text = await _call(mcp_server, "regular_triangulations", {"polytope": document(SQUARE_VERTICES)})
        assert json.loads(text)["count"] == 2

    async def test_secondary_fan(self, mcp_server) -> None:
        text = await _call(mcp_server, "secondary_fan", {"polytope": document(SEGMENT_VERTICES)})
        report = json.loads(text)
        assert report["rank"] == 1
        assert [c["generators"] for c in report["chambers"]] == [[[1]], [[-1]]]

    async def test_chamber_report(self, mcp_server) -> None:
        text = await _call(mcp_server, "chamber_report", {"polytope": document(SEGMENT_VERTICES), "samples": 3})
        fine = json.loads(text)["chambers"][0]
        assert fine["relative_minimal"] is True

    async def test_wall_report(self, mcp_server) -> None:
        text = await _call(mcp_server, "wall_report", {"polytope": document(SEGMENT_VERTICES)})
        (wall,) = json.loads(text)["walls"]
        assert wall["kind"] == "divisorial"
        assert wall["q_tau"] == ["-1/2"]

    async def test_mori_check(self, mcp_server) -> None:
        text = await _call(mcp_server, "mori_check", {"polytope": document(SQUARE_VERTICES), "samples": 3})
        report = json.loads(text)
        assert all(c["passed"] for c in report["chambers"])

    async def test_family_report(self, mcp_server) -> None:
        polytope = document(SEGMENT_VERTICES, [[0, 1], [1, 2]])
        text = await _call(mcp_server, "family_report", {"polytope": polytope, "truncation": 2})
        (family,) = json.loads(text)["families"]
        assert family["commutative"] is True

    async def test_cocycle_report(self, mcp_server) -> None:
        text = await _call(mcp_server, "cocycle_report", {"polytope": document(SQUARE_VERTICES)})
        assert json.loads(text)["holds"] is True


@pytest.mark.asyncio
class TestToolErrors:
    """Failures come back as ``❌`` strings instead of exceptions."""

    async def test_no_regular_simplex(self, mcp_server) -> None:
        text = await _call(mcp_server, "secondary_fan", {"polytope": document(REEVE_VERTICES)})
        assert text.startswith("❌")
        assert "NoRegularSimplex" in text

    async def test_malformed_document(self, mcp_server) -> None:
        text = await _call(mcp_server, "lattice_points", {"polytope": "{"})
        assert text.startswith("❌")
        assert "SchemaError" in text

    async def test_bad_option(self, mcp_server) -> None:
        text = await _call(mcp_server, "mori_check", {"polytope": document(SQUARE_VERTICES), "samples": -1})
        assert text.startswith("❌")
        assert "Sample count" in text


@pytest.mark.asyncio
class TestToolThreading:
    """Computations run off the event loop thread."""

    async def test_render_runs_on_a_worker_thread(self) -> None:
        from mcp.server.fastmcp import FastMCP

        from gkz_mori.config import SERVER_NAME
        from gkz_mori.services.gkz import GkzService

        service = GkzService()
        original = service.render
        on_loop_thread: list[bool] = []

        def recording(*args, **kwargs) -> str:
            on_loop_thread.append(threading.current_thread() is threading.main_thread())
            return original(*args, **kwargs)

        service.render = recording
        server = FastMCP(SERVER_NAME)
        service.register(server)

        text = await _call(server, "wall_report", {"polytope": document(SEGMENT_VERTICES)})
        assert json.loads(text)["walls"][0]["kind"] == "divisorial"
        assert on_loop_thread == [False]
