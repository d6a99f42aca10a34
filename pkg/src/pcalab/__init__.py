"""Executable fixed-point constructions over a fuel-bounded combinator machine."""

from .machine import BACKEND, OutOfFuel, Stuck, Value, evaluate

__version__ = "0.1.0"
__all__ = ["BACKEND", "OutOfFuel", "Stuck", "Value", "evaluate", "__version__"]
