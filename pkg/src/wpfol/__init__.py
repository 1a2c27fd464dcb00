"""Exact computations with foliations on weighted projective planes."""

__version__ = "0.1.0"
