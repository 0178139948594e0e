"""Service registry for the gkz-mori server.

Plugins are collected with :meth:`ServiceRegistry.add` and applied in
registration order by :meth:`ServiceRegistry.apply_all`. A plugin type
may be added once; a second instance would register the same tool names.
"""

import logging

from mcp.server.fastmcp import FastMCP

from gkz_mori.services.base import ServicePlugin

logger = logging.getLogger(__name__)


class ServiceRegistry:
    """Ordered set of :class:`ServicePlugin` instances, keyed by type.

    Usage::

        registry = ServiceRegistry()
        registry.add(GkzService())
        registry.apply_all(mcp)
    """

    def __init__(self) -> None:
        self._plugins: dict[type, ServicePlugin] = {}

    def add(self, plugin: ServicePlugin) -> None:
        """Queue *plugin* for :meth:`apply_all`.

        Raises:
            ValueError: If a plugin of the same type was already added.
        """
        kind = type(plugin)
        if kind in self._plugins:
            raise ValueError(f"{kind.__name__} is already registered")
        self._plugins[kind] = plugin
        logger.debug("Queued service plugin %s", kind.__name__)

    def apply_all(self, mcp: FastMCP) -> None:
        """Call ``register(mcp)`` on every queued plugin."""
        for kind, plugin in self._plugins.items():
            plugin.register(mcp)
            logger.info("Applied %s to %s", kind.__name__, mcp.name)

    @property
    def plugins(self) -> list[ServicePlugin]:
        """Registered plugins in registration order (a copy)."""
        return list(self._plugins.values())
