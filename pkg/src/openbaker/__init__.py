"""Numerical toolkit for quantum open baker's maps.

A quantum open baker's map is the N x N operator

    B_N = F_N^* blockdiag(chi_K F_K chi_K, ..., chi_K F_K chi_K) I_{A,M},

built from a base M, an alphabet A of surviving strips, and a smooth
cutoff chi, at dimension N = K * M.  The package constructs these
operators (dense, trimmed, and matrix-free), computes their spectra and
eigenvalue counting functions, assembles the approximate-inverse
identity behind the fractal Weyl upper bound, and runs the scaling
experiments end to end through the ``baker`` command line tool.
"""

__version__ = "0.1.0"

from .baker import BakerSpec
from .cutoff import make_cutoff

__all__ = ["BakerSpec", "make_cutoff", "__version__"]
