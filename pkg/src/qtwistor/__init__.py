"""Exact and numeric checks for the quantum twistor bundle over the quantum 4-sphere."""
from .ncalg import AlgMatrix, Element, normal_form, z, zs
from .parse import parse
from .scalar import QLaurent, QRational

__version__ = "0.1.0"

__all__ = ["AlgMatrix", "Element", "QLaurent", "QRational", "normal_form", "parse", "z", "zs", "__version__"]
