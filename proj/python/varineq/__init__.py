"""Subgradient-projection solver for variable inequalities.

Python bindings over the C++ core: polyhedral cone algebra, the projection
engine, the two algorithm variants (R and S), and the verification
diagnostics.
"""

from ._varineq import *  # noqa: F401,F403

__version__ = "0.1.0"
