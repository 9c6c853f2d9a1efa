"""Ends, envelopes and end-displaying tree-decompositions of eventually
periodic infinite graphs."""

__version__ = "0.1.0"
