"""Exact computations for universal Coxeter groups UC(N)."""

__version__ = "0.1.0"
