"""transdeg: certified degree growth and first dynamical degrees for
monomial-involution maps of projective space.

The library computes exact degree sequences of the composite maps
f = g . h_A (a monomial map followed by a quadratic-type involution),
solves for the first dynamical degree as the reciprocal root of a
certified power series, and emits machine-checkable certificates for the
arithmetic hypotheses (irreducibility, full symmetric Galois group,
resonance-freeness, wall-avoidance of orbits, non-unit twist ratios)
behind the construction.
"""

from __future__ import annotations

from . import errors
from .errors import TransdegError

__version__ = "0.1.0"

__all__ = ["errors", "TransdegError", "__version__"]
