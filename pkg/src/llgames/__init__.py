"""Sequence-form games with a limited-lookahead opponent."""

__version__ = "0.1.0"
