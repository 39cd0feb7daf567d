"""Exact cellular-automata toolkit built on grossone arithmetic."""

__version__ = "0.1.0"
__all__ = ["__version__"]
