"""Classification and enumeration of 2-uniform maps on the torus."""

from .lattice import HnfMatrix, IntMatrix2, hnf_enumerate, hnf_reduce
from .numtheory import DomainError, sigma, tau

__version__ = "0.1.0"

__all__ = ["DomainError", "HnfMatrix", "IntMatrix2", "hnf_enumerate", "hnf_reduce", "sigma", "tau"]
