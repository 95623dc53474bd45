"""Quasi-cyclic constructions of quaternary additive codes."""

__version__ = "0.1.0"
