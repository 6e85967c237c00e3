"""Knot Floer invariants and surgery questions for simple knots in lens spaces."""

__version__ = "0.1.0"
