"""Exact-arithmetic construction and verification of star-product cocycles.

Everything is computed over Gaussian rationals: the star product of the
canonical noncommutative polynomial algebra, its dual-valued cocycles built
either from the simplex-integral symbol or from a form-valued resolution,
the twisted and smash-product variants, and the oriented-simplex
characteristic function whose coboundary identity mirrors the cocycle
condition.  No identity in this package is checked approximately.
"""

__version__ = "0.1.0"
