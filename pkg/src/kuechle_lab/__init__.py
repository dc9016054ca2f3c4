"""Exact computational checks for Picard-rank > 1 Kuchle fourfolds."""

__version__ = "0.1.0"
