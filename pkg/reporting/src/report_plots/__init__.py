"""Figures from pressure-forge CSV outputs.

Reads only the documented CSV schemas (no recomputation; the primary
pipeline is the single source of numerical truth) and renders matplotlib
figures.  Vector output is byte-stable across reruns.
"""

from .figures import FigureSpec, SchemaError, render

__version__ = "0.1.0"
