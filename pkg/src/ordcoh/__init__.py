"""Exact walks on ordinals, n-coherent families, and Cech cochain models."""

from .ordcore import Ordinal, parse, format_ordinal, OMEGA, ZERO, ONE, nat

__version__ = "0.1.0"

__all__ = ["Ordinal", "parse", "format_ordinal", "OMEGA", "ZERO", "ONE", "nat", "__version__"]
