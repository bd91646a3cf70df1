"""Exact verification of colouring-space computations on the 600-cell and 5x5 Latin squares."""

__version__ = "0.1.0"
