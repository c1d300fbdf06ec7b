"""Exception types shared across the library.

Every certified computation that can fail does so through one of these,
so callers (and the CLI exit-code mapping) can tell apart "the input is
bad", "the hypothesis is actually false", and "we ran out of precision".
"""

from __future__ import annotations


class TransdegError(Exception):
    """Base class for all library errors."""


class DimensionTooSmall(TransdegError):
    """Construction requires dimension >= 3."""


class NotSquarefree(TransdegError):
    """Polynomial is not squarefree mod p; the prime must be skipped."""

    def __init__(self, p: int):
        self.p = p
        super().__init__(f"not squarefree mod {p}")


class PeriodCapExceeded(TransdegError):
    """Multiplicative order search exceeded the iteration cap."""

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"period exceeds cap {cap}")


class WidthTooLarge(TransdegError):
    """Enclosure too wide for the requested reconstruction."""


class RecursionMismatch(TransdegError):
    """The two independent degree computations disagree (internal bug trap)."""


class NoRootInRange(TransdegError):
    """The series never reaches 1 on the admissible interval."""


class DivergentTail(TransdegError):
    """No geometric tail bound could be certified from the computed terms."""


class PrecisionCeiling(TransdegError):
    """Certification failed at the configured precision ceiling."""


class RootsNotSeparable(TransdegError):
    """Certified root enclosures could not be made pairwise disjoint."""


class LeadingPairAmbiguous(TransdegError):
    """Cannot certify a unique leading complex-conjugate eigenvalue pair."""


class OnBreakpoint(TransdegError):
    """Angle lies on (or indistinguishably near) a discontinuity of gamma."""


class DenominatorNearZero(TransdegError):
    """A denominator enclosure contains zero; the quantity is not certified."""


class BoundNotReached(TransdegError):
    """Zero-position merging could not push the bound past the target."""


class ReconstructionAmbiguous(TransdegError):
    """More than one candidate rational/integer fits the enclosure."""


class SearchExhausted(TransdegError):
    """A bounded search (primes, perturbation sizes, ...) ran out of budget."""


class CircleStraddle(TransdegError):
    """A root enclosure straddles the unit circle; count is undecidable."""


class ComponentCollapse(TransdegError):
    """The image of a curve degenerates (lands in the indeterminacy/contracted locus)."""
