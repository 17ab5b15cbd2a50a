"""
Utility modules for CoboScope.

This package contains helper functions and classes for:
- Parsing space and divisor expressions
- Rendering rationals, series and tables (text, JSON, pandas)
- Caching localization results on disk
"""

from .space_parser import parse_space, parse_divisor
from .format_utils import dump_json, rational_str
from .file_utils import ResultCache

__all__ = [
    "parse_space",
    "parse_divisor",
    "dump_json",
    "rational_str",
    "ResultCache",
]
