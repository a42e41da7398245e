"""Generation and counting of graded, semimodular, modular and geometric lattices."""

from .backend import is_compiled
from .core import Lattice, PartialLattice, dual, new_initial

__version__ = "0.1.0"

__all__ = ["Lattice", "PartialLattice", "dual", "new_initial", "is_compiled"]
