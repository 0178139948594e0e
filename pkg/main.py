"""gkz-mori MCP entry point.

Starts the MCP server over stdio transport. Tool definitions live in
the ``gkz_mori`` package; this module keeps ``uv run main.py`` as the
launch command.
"""

from gkz_mori.server import mcp


def main() -> None:
    """Run the gkz-mori server over stdio transport."""
    mcp.run(transport="stdio")


if __name__ == "__main__":
    main()
