"""Numerical laboratory for Berezin-type quantities of operators on reproducing kernel spaces."""
from ._backend import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
