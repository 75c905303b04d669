"""Sequences of arithmetic progressions linked by modular inverses."""

__version__ = "0.1.0"
