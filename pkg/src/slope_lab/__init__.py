"""Exact slope, Barja-Stoppino and Harder-Narasimhan computations for
polarized fibrations over a curve."""

__version__ = "0.1.0"
