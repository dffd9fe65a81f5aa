"""Exact verification toolkit for root-system combinatorics, affine Weyl
linkage, exhaustive weight-equation searches, and type-C Weyl module chases.

All arithmetic is exact: integer vectors in the fundamental-weight basis,
``fractions.Fraction`` in the orthogonal (epsilon) realization.  No floats.
"""

__version__ = "0.1.0"

from .rootsys import RootSystem, build_root_system, parse_weight, format_weight

__all__ = [
    "RootSystem",
    "build_root_system",
    "parse_weight",
    "format_weight",
    "__version__",
]
