"""Pseudodeformation and framed-lifting ideal computations for finite 2-groups."""

__version__ = "0.1.0"
