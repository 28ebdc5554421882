"""Generalized DP-colouring of graphs."""

from .kernels import BACKEND

__all__ = ["BACKEND"]
__version__ = "0.1.0"
