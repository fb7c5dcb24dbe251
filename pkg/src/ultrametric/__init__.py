"""Exact arithmetic and analysis on ultrametric spaces.

Subpackages cover p-adic and mixed-radix integer arithmetic, Hensel
lifting, max-ultranorm linear algebra, Hausdorff measures on Cantor
products, geometric audits, maximal functions with exact weak-type
constants, and character tables over exact roots of unity.
"""

from .padic import PAdicInt, PAdicScalar, abs_p, padic_from_rational  # noqa: F401
from .radic import Radix, RadicInt, ScaleSeq  # noqa: F401
from .cantor import Cylinder, ProductMeasure, ProductSpec  # noqa: F401

__version__ = "0.1.0"
