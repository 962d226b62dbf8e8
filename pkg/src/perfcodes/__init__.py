"""Decide whether a subgroup of S_n is a subgroup perfect code, with certificates."""

__version__ = "0.1.0"
