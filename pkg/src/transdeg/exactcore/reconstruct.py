"""Recovering exact rationals from certified enclosures."""

from __future__ import annotations

from fractions import Fraction

from mpmath import mpf

from ..errors import ReconstructionAmbiguous, WidthTooLarge
from .enclosures import RealEnclosure


def mpf_to_fraction(x) -> Fraction:
    """Exact conversion: every finite mpf is a binary rational.

    Accepts plain mpf values and point intervals (ivmpf); the latter are
    unpacked from their raw endpoints so no context rounding happens.
    """
    raw = getattr(x, "_mpf_", None)
    if raw is None:
        ival = getattr(x, "_mpi_", None)
        if ival is not None:
            a, b = ival
            if a != b:
                raise ValueError("interval endpoint expected, got a non-point interval")
            raw = a
        else:
            # anything else goes through the constructor (rounds at mp.prec,
            # which is fine for genuinely inexact inputs like floats)
            raw = mpf(x)._mpf_
    sign, man, exp, _ = raw
    man, exp = int(man), int(exp)
    if man == 0:
        if exp != 0:
            raise ValueError("non-finite mpf cannot become a Fraction")
        return Fraction(0)
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def rational_reconstruct(x: RealEnclosure, denominator_bound: int) -> Fraction | None:
    """The unique rational p/q, |q| <= bound, inside the enclosure — or None.

    Requires width < 1/(2*bound^2): then at most one such rational exists and,
    if it does, it is a continued-fraction convergent of the midpoint.
    """
    lo = mpf_to_fraction(x.lo)
    hi = mpf_to_fraction(x.hi)
    width = hi - lo
    if width >= Fraction(1, 2 * denominator_bound * denominator_bound):
        raise WidthTooLarge(
            f"width {float(width):.3g} too large for denominator bound {denominator_bound}"
        )
    mid = (lo + hi) / 2

    # integer part first
    def contained(f: Fraction) -> bool:
        return lo <= f <= hi

    # walk the continued fraction of mid, testing convergents
    import math
    a = mid
    q = math.floor(a)
    p_prev, q_prev = 1, 0
    p_cur, q_cur = q, 1
    frac = a - q
    for _ in range(200):
        if q_cur <= denominator_bound and contained(Fraction(p_cur, q_cur)):
            return Fraction(p_cur, q_cur)
        if q_cur > denominator_bound:
            break
        if frac == 0:
            break
        a = 1 / frac
        q = math.floor(a)
        frac = a - q
        p_prev, p_cur = p_cur, q * p_cur + p_prev
        q_prev, q_cur = q_cur, q * q_cur + q_prev
    return None


def reconstruct_in_lattice(x: RealEnclosure, denominator: int) -> Fraction:
    """The unique element of (1/denominator) * Z inside the enclosure.

    Raises ReconstructionAmbiguous when the interval holds zero or several
    lattice points — callers escalate precision (width < 1/(2*denominator)
    guarantees success when the target really is in the lattice).
    """
    lo = mpf_to_fraction(x.lo) * denominator
    hi = mpf_to_fraction(x.hi) * denominator
    import math
    kmin = math.ceil(lo)
    kmax = math.floor(hi)
    if kmin != kmax:
        raise ReconstructionAmbiguous(
            f"{max(0, kmax - kmin + 1)} lattice points with denominator {denominator} in enclosure"
        )
    return Fraction(kmin, denominator)
