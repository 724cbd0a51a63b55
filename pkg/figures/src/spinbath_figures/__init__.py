"""Figure rendering for the spin-bath simulator's CSV datasets."""

from .dataset import SchemaError, read_table, require_columns
from .render import Curve, FigureSpec, Panel, render

__all__ = [
    "Curve",
    "FigureSpec",
    "Panel",
    "SchemaError",
    "read_table",
    "render",
    "require_columns",
]

__version__ = "0.1.0"
