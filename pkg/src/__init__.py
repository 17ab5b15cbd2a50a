"""
CoboScope - exact computations in rational algebraic cobordism.

This package provides formal group laws over the Lazard ring, Chern-number
calculus on projective-bundle towers, the cobordism ring of the point in the
basis of products of projective spaces, and degree-zero Donaldson-Thomas
partition functions, each cross-checked against an independent oracle.
"""

__version__ = "1.0.0"
__author__ = "CoboScope Team"

from .main import main

__all__ = ["main"]
