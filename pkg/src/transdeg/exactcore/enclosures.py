"""Certified real/complex interval arithmetic on top of mpmath.iv.

A RealEnclosure is a closed interval with binary-rational endpoints; a
ComplexEnclosure is a rectangle (real interval x imaginary interval).
Outward rounding is inherited from mpmath's interval context, so every
arithmetic result *contains* the exact mathematical value.  Width is
reduced by recomputing at higher precision, never by shrinking in place.
"""

from __future__ import annotations

import math
import os
from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv, mp, mpf

from ..errors import CircleStraddle, DenominatorNearZero, PrecisionCeiling

DEFAULT_PRECISION_CEILING = 4096


def precision_ceiling() -> int:
    """Configured precision ceiling in bits (TRANSDEG_PRECISION_CEILING)."""
    v = os.environ.get("TRANSDEG_PRECISION_CEILING")
    if v:
        try:
            return max(64, int(v))
        except ValueError:
            pass
    return DEFAULT_PRECISION_CEILING


@contextmanager
def enclosure_context(prec_bits: int):
    """Temporarily set the interval working precision."""
    old = iv.prec
    iv.prec = prec_bits
    try:
        yield
    finally:
        iv.prec = old


def _to_iv(x):
    if isinstance(x, RealEnclosure):
        return x._v
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / iv.mpf(x.denominator)
    return iv.mpf(x)


def _endpoint_fraction(raw) -> Fraction:
    """Exact value of a raw mpf endpoint tuple (sign, man, exp, bc)."""
    sign, man, exp, _ = raw
    v = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -v if sign else v


def _exact_query(x):
    """x as an exact Fraction when possible, else None (fall back to iv)."""
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raw = getattr(x, "_mpf_", None)
    if raw is not None:
        return _endpoint_fraction(raw)
    return None


class RealEnclosure:
    """Closed interval certified to contain one real number."""

    __slots__ = ("_v",)

    def __init__(self, value, hi=None):
        if hi is not None:
            self._v = iv.mpf([_to_iv(value).a, _to_iv(hi).b])
        else:
            self._v = _to_iv(value)

    @classmethod
    def _raw(cls, v):
        out = object.__new__(cls)
        out._v = v
        return out

    # -- data access
    @property
    def lo(self) -> mpf:
        return self._v.a

    @property
    def hi(self) -> mpf:
        return self._v.b

    def width(self) -> mpf:
        return self._v.delta

    def mid(self) -> mpf:
        # mpmath computes ivmpf.mid at the *mpf* context precision, which
        # silently truncates high-precision endpoints; do it at iv.prec
        # from the raw endpoint mantissas.
        a, b = self._v._mpi_
        with mp.workprec(max(iv.prec, 53)):
            return (mp.make_mpf(a) + mp.make_mpf(b)) / 2

    # -- arithmetic
    def __add__(self, other):
        return RealEnclosure._raw(self._v + _to_iv(other))

    __radd__ = __add__

    def __neg__(self):
        return RealEnclosure._raw(-self._v)

    def __sub__(self, other):
        return RealEnclosure._raw(self._v - _to_iv(other))

    def __rsub__(self, other):
        return RealEnclosure._raw(_to_iv(other) - self._v)

    def __mul__(self, other):
        return RealEnclosure._raw(self._v * _to_iv(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _to_iv(other)
        if o.a <= 0 <= o.b:
            raise DenominatorNearZero("division by interval containing 0")
        return RealEnclosure._raw(self._v / o)

    def __rtruediv__(self, other):
        if self._v.a <= 0 <= self._v.b:
            raise DenominatorNearZero("division by interval containing 0")
        return RealEnclosure._raw(_to_iv(other) / self._v)

    def __pow__(self, n: int):
        return RealEnclosure._raw(self._v ** n)

    def sqrt(self):
        return RealEnclosure._raw(iv.sqrt(self._v))

    def log(self):
        if self._v.a <= 0:
            raise DenominatorNearZero("log of interval touching 0")
        return RealEnclosure._raw(iv.log(self._v))

    def exp(self):
        return RealEnclosure._raw(iv.exp(self._v))

    def abs(self):
        return RealEnclosure._raw(abs(self._v))

    def root(self, n: int):
        """n-th root of a certified-positive interval."""
        if self._v.a <= 0:
            raise DenominatorNearZero("root of interval touching 0")
        return RealEnclosure._raw(iv.exp(iv.log(self._v) / n))

    # -- predicates (certified; a False answer means "not provable")
    def contains(self, x) -> bool:
        q = _exact_query(x)
        if q is not None:
            a, b = self._v._mpi_
            return _endpoint_fraction(a) <= q <= _endpoint_fraction(b)
        t = _to_iv(x)
        return self._v.a <= t.a and t.b <= self._v.b

    def contains_int(self) -> bool:
        """Does the interval contain any integer?  (exact: endpoints are
        binary rationals, so floor/ceil are computed exactly)"""
        a, b = self._v._mpi_
        return math.floor(_endpoint_fraction(b)) >= math.ceil(_endpoint_fraction(a))

    def unique_int(self):
        """The single integer in the interval, or None if zero/many."""
        a, b = self._v._mpi_
        lo = math.ceil(_endpoint_fraction(a))
        hi = math.floor(_endpoint_fraction(b))
        if lo == hi:
            return lo
        return None

    def is_positive(self) -> bool:
        return self._v.a > 0

    def is_negative(self) -> bool:
        return self._v.b < 0

    def is_nonzero(self) -> bool:
        return self._v.a > 0 or self._v.b < 0

    def strictly_less(self, other) -> bool:
        return self._v.b < _to_iv(other).a

    def subset_of(self, other) -> bool:
        o = _to_iv(other)
        return o.a <= self._v.a and self._v.b <= o.b

    def __repr__(self):
        return f"RealEnclosure[{self._v.a}, {self._v.b}]"


class ComplexEnclosure:
    """Axis-aligned rectangle certified to contain one complex number."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = re if isinstance(re, RealEnclosure) else RealEnclosure(re)
        self.im = im if isinstance(im, RealEnclosure) else RealEnclosure(im)

    # -- arithmetic
    def __add__(self, other):
        other = _as_complex(other)
        return ComplexEnclosure(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexEnclosure(-self.re, -self.im)

    def __sub__(self, other):
        other = _as_complex(other)
        return ComplexEnclosure(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_complex(other) - self

    def __mul__(self, other):
        other = _as_complex(other)
        return ComplexEnclosure(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conj(self):
        return ComplexEnclosure(self.re, -self.im)

    def abs2(self) -> RealEnclosure:
        return self.re * self.re + self.im * self.im

    def abs(self) -> RealEnclosure:
        return self.abs2().sqrt()

    def __truediv__(self, other):
        other = _as_complex(other)
        den = other.abs2()
        if not den.is_positive():
            raise DenominatorNearZero("division by rectangle containing 0")
        num = self * other.conj()
        return ComplexEnclosure(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return _as_complex(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return 1 / (self ** (-n))
        out = ComplexEnclosure(1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- predicates
    def contains(self, re, im=0) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def is_nonzero(self) -> bool:
        return self.re.is_nonzero() or self.im.is_nonzero()

    def overlaps(self, other: "ComplexEnclosure") -> bool:
        return not (
            self.re.hi < other.re.lo or other.re.hi < self.re.lo
            or self.im.hi < other.im.lo or other.im.hi < self.im.lo
        )

    def width(self) -> mpf:
        w1, w2 = self.re.width(), self.im.width()
        return w1 if w1 > w2 else w2

    def mid(self):
        from mpmath import mpc
        return mpc(self.re.mid(), self.im.mid())

    def arg(self) -> RealEnclosure:
        """Certified argument in (-pi, pi].

        Raises CircleStraddle if the rectangle meets the branch cut
        (negative real axis / origin) so the caller can escalate.
        """
        re, im = self.re, self.im
        if not re.is_positive() and not im.is_nonzero():
            raise CircleStraddle("rectangle meets the branch cut; raise precision")
        return RealEnclosure._raw(iv.atan2(im._v, re._v))

    def __repr__(self):
        return f"ComplexEnclosure({self.re!r}, {self.im!r})"


def _as_complex(x) -> ComplexEnclosure:
    if isinstance(x, ComplexEnclosure):
        return x
    if isinstance(x, RealEnclosure):
        return ComplexEnclosure(x, RealEnclosure(0))
    if isinstance(x, complex):
        return ComplexEnclosure(x.real, x.imag)
    return ComplexEnclosure(RealEnclosure(x), RealEnclosure(0))


def unit_circle_point(t: RealEnclosure) -> ComplexEnclosure:
    """e^{2 pi i t} as a rectangle."""
    ang = RealEnclosure._raw(2 * iv.pi * t._v)
    return ComplexEnclosure(
        RealEnclosure._raw(iv.cos(ang._v)), RealEnclosure._raw(iv.sin(ang._v))
    )


def refine_until(compute, accept, start_prec: int = 64, ceiling: int | None = None,
                 description: str = "enclosure"):
    """Run ``compute()`` at doubling precision until ``accept(result)``.

    Raises PrecisionCeiling when the configured ceiling is reached without
    acceptance.  ``compute`` must be a pure function of the ambient interval
    precision.
    """
    if ceiling is None:
        ceiling = precision_ceiling()
    prec = start_prec
    last_err = None
    while prec <= ceiling:
        with enclosure_context(prec):
            try:
                result = compute()
            except (CircleStraddle, DenominatorNearZero) as e:
                last_err = e
                prec *= 2
                continue
            if accept(result):
                return result
        prec *= 2
    raise PrecisionCeiling(
        f"could not certify {description} within {ceiling} bits"
        + (f" (last: {last_err})" if last_err else "")
    )
