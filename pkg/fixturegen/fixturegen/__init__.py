"""Arbitrary-precision golden-value generator for the rfso fixture files."""

__version__ = "0.1.0"
