"""Exact counts of factorizations of regular elliptic elements of GL_n(F_q)."""

from qglf.qpoly import QPoly, QRational

__all__ = ["QPoly", "QRational"]
__version__ = "0.1.0"
