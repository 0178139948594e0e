"""Service plugin infrastructure for the MCP server.

This sub-package provides the base abstractions, the service registry,
and the GKZ service that registers the computation tools onto the
FastMCP instance.
"""
