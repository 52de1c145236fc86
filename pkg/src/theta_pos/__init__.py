"""Exact computations with the Theta-positive structure of PO(p,q)."""

from .exactlinalg import Matrix
from .pqspace import FormData, Signature, build_form

__version__ = "0.1.0"

__all__ = ["FormData", "Matrix", "Signature", "build_form", "__version__"]
