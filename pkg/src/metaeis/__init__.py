"""Exact computations around twisted geometric Eisenstein series."""

from .errors import FalsificationError, InputError
from .metaplectic import build_levi, build_metaplectic
from .rootdata import CartanLabel, build_root_datum

__all__ = ["CartanLabel", "FalsificationError", "InputError", "build_levi", "build_metaplectic",
           "build_root_datum"]
__version__ = "0.1.0"
