"""High-precision Dirichlet L-series, prime zeta modulo functions and
residue-class Euler-product constants."""

from .specfun import PrecisionContext, PrecisionError

__all__ = ["PrecisionContext", "PrecisionError"]
__version__ = "0.1.0"
