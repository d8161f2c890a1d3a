"""Nonrepetitive sequences and nonrepetitive edge-colorings of complete k-ary trees."""

__version__ = "0.1.0"
