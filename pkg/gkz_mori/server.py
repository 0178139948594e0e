"""MCP server construction using the service registry.

Creates the ``FastMCP`` instance, loads the service plugins into a
:class:`~gkz_mori.services.registry.ServiceRegistry` and applies them.
"""

from mcp.server.fastmcp import FastMCP

from gkz_mori.config import SERVER_NAME
from gkz_mori.services.gkz import GkzService
from gkz_mori.services.registry import ServiceRegistry

mcp = FastMCP(SERVER_NAME)

registry = ServiceRegistry()
registry.add(GkzService())
registry.apply_all(mcp)
