"""
Core computational modules.

This package contains the exact-arithmetic building blocks:
- series: truncated multivariate power series over Q
- fgl: formal group laws, inverse and difference series
- chern: spaces, presented cohomology rings and Chern numbers
- cobordism: the rational cobordism ring in the product basis
- dt: degree-zero DT partition functions and degeneration checks
- vertex: the localization oracle over plane partitions
"""

from .config import Config
from .errors import CoboScopeError

__all__ = ["Config", "CoboScopeError"]
