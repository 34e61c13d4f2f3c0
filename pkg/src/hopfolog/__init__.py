"""Exact computations with graded modules over small Hopf algebras."""

from .family import HopfFamily, group_ring_z2, taft, truncated

__version__ = "0.1.0"

__all__ = ["HopfFamily", "truncated", "taft", "group_ring_z2", "__version__"]
