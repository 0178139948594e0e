"""Base abstractions for service plugins.

Defines the contracts every service must satisfy:

- ``BaseFormatter`` -- converts report dictionaries into the text an MCP tool returns
- ``ServicePlugin`` -- structural protocol for registering tools onto FastMCP

A service extends ``BaseFormatter`` and exposes a class satisfying
``ServicePlugin`` so the registry can wire it into the server.
"""

from abc import ABC, abstractmethod
from typing import Any, Protocol

from mcp.server.fastmcp import FastMCP


class BaseFormatter(ABC):
    """Contract for all report formatters.

    Subclasses must implement :meth:`format` to convert a report
    dictionary into the string returned to the MCP client.
    """

    @abstractmethod
    def format(self, data: dict[str, Any], **kwargs: Any) -> str:
        """Format a report dictionary into a string.

        Args:
            data: The report produced by a computation.
            **kwargs: Additional formatting options.

        Returns:
            The text handed to the MCP client or printed by the CLI.
        """


class ServicePlugin(Protocol):
    """Structural protocol for service plugins.

    Any class with a ``register(mcp)`` method satisfies this protocol.
    The :class:`~gkz_mori.services.registry.ServiceRegistry` uses it
    to wire each service's tools into the FastMCP server.
    """

    def register(self, mcp: FastMCP) -> None:
        """Register this service's tools onto *mcp*.

        Args:
            mcp: The FastMCP server instance to register onto.
        """
        ...
