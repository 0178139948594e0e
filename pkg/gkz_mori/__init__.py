"""gkz-mori package.

Exact secondary fans of lattice polytopes, their Mori chambers and wall
crossings, and the degeneration data of the associated toric families.
The computations are served over MCP (``gkz_mori.server``) and the
``gkz`` command line (``gkz_mori.cli``).
"""
