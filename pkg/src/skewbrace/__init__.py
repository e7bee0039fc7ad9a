"""Finite skew left braces: series, word maps, isoclinism, cohomology and enumeration."""

__version__ = "0.1.0"

from .braces import SkewBrace, validate_brace  # noqa: E402
from .groups import GroupTable, validate_group  # noqa: E402

__all__ = ["GroupTable", "SkewBrace", "__version__", "validate_brace", "validate_group"]
