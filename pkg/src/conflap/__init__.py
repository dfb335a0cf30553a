"""Exact checks of how powers of the Laplacian on R^n and on the round sphere correspond."""

__version__ = "0.1.0"
