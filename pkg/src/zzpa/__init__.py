"""Pseudo-Anosov zig-zag interval maps computed with exact algebraic arithmetic."""

__version__ = "0.1.0"
