"""Exact arithmetic for self-similar interval exchange transformations."""

__version__ = "0.1.0"
