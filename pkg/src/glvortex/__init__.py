"""Vortex filament laboratory for the dispersive Ginzburg-Landau equation."""

__version__ = "0.1.0"

from .grid import (  # noqa: F401
    ComplexField,
    GridSpec,
    VectorField3,
    gradient,
    inner_product,
    integrate,
    laplacian,
    sobolev_norm,
)
