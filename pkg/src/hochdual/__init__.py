"""Exact computations with Hochschild chains, bar constructions and Koszul duals."""
__version__ = "0.1.0"
