"""Zigzags, z-orientations and z-monodromy of triangulated closed surfaces."""

__version__ = "0.1.0"
