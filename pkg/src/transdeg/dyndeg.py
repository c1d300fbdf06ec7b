"""Certified solver for the degree-growth series equation.

Solves  sum_{n>=1} Psi(A^{Nn}) x^n = 1  for the unique x in (0, rho(A)^-N)
and reports lambda = 1/x.  All bracket decisions are made in exact rational
arithmetic: the polynomial part of the series is an integer polynomial
evaluated at Fraction points, and the tail is bounded by a proven geometric
envelope  Psi(A^{Nn}) <= C * rho_t^n  (rho_t a certified rational upper
bound slightly above the spectral radius of A^N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .dynamics import psi
from .errors import DivergentTail, NoRootInRange, PrecisionCeiling
from .exactcore.enclosures import RealEnclosure, enclosure_context
from .exactcore.matrices import identity, mat_mul, mat_pow
from .exactcore.reconstruct import mpf_to_fraction
from .spectral import spectral_data

RESULT_PRECISION = 192  # bits used to wrap exact rational results


def _infinity_norm(M) -> int:
    return max(sum(abs(x) for x in row) for row in M)


def _upper_root(n: int, q: int) -> Fraction:
    """A rational u with u**q >= n, within a factor (1 + 2^-16) of n^(1/q)."""
    if n <= 0:
        raise ValueError("positive integer required")
    from mpmath import mp

    with mp.workprec(64):
        u = mpf_to_fraction(mp.root(n, q))
    bump = 1 + Fraction(1, 2**16)
    u *= bump
    while u**q < n:
        u *= bump
    return u


def series_eval(coeffs, x, tail_C=0, tail_rho=0) -> RealEnclosure:
    """Certified enclosure of sum_n coeffs[n] * x^n plus a tail [0, T].

    The tail covers all terms with n >= len(coeffs) under the envelope
    |coeffs_n| <= tail_C * tail_rho^n.  Raises DivergentTail when the
    envelope does not converge on x.
    """
    tail_C = Fraction(tail_C)
    tail_rho = Fraction(tail_rho)
    if tail_C < 0 or tail_rho < 0:
        raise ValueError("tail envelope parameters must be nonnegative")
    if isinstance(x, Fraction):
        x_enc = None
        x_lo, x_hi = x, x
    else:
        x_enc = x
        x_lo, x_hi = mpf_to_fraction(x.lo), mpf_to_fraction(x.hi)
    if x_lo < 0:
        raise ValueError("series domain is x >= 0")
    if tail_C > 0 and tail_rho > 0 and x_hi * tail_rho >= 1:
        raise DivergentTail(
            f"x upper bound {float(x_hi):.6g} reaches 1/tail_rho"
        )
    tail_hi = _tail_bound(len(coeffs), x_hi, tail_C, tail_rho)
    if x_enc is None:
        lo = _poly_at(coeffs, x_lo)
        return _wrap_interval(lo, lo + tail_hi)
    with enclosure_context(max(RESULT_PRECISION, 64)):
        acc = RealEnclosure(0)
        for c in reversed(coeffs):
            acc = acc * x_enc + c
        return acc + RealEnclosure(Fraction(0), tail_hi)


def _poly_at(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _tail_bound(start_index: int, x: Fraction, C: Fraction, rho: Fraction) -> Fraction:
    """Exact upper bound for sum_{n >= start_index} C (rho x)^n."""
    if C == 0 or rho == 0 or x == 0:
        return Fraction(0)
    z = rho * x
    if z >= 1:
        raise DivergentTail("tail ratio at or above 1")
    return C * z**start_index / (1 - z)


def _wrap_interval(lo: Fraction, hi: Fraction) -> RealEnclosure:
    # pick a working precision fine enough that outward rounding adds
    # far less than the bracket width itself
    prec = RESULT_PRECISION
    w = hi - lo
    if w > 0:
        ratio = max(abs(lo), abs(hi), Fraction(1)) / w
        gap = ratio.numerator.bit_length() - ratio.denominator.bit_length()
        prec = max(prec, gap + 24)
    with enclosure_context(prec):
        return RealEnclosure(lo, hi)


def _dyadic_upper(x: Fraction, bits: int) -> Fraction:
    """Compact dyadic rational >= x (certified upper bounds stay sound)."""
    return Fraction(math.ceil(x * 2**bits), 2**bits)


@dataclass(frozen=True)
class SeriesSolveResult:
    """Certified bracket for the series root and the induced growth rate."""

    lambda_enclosure: RealEnclosure
    n_terms_used: int
    tail_bound_at_root: Fraction
    residual: RealEnclosure          # encloses S(x*) - 1
    x_bracket: tuple                 # (x_lo, x_hi) exact Fractions
    tail_constant: Fraction
    tail_base: Fraction


class _Envelope:
    """Coefficient stream Psi(B^n) with a proven geometric envelope.

    The envelope constant is the larger of the contract's empirical
    constant (4x the worst of the last ten ratios, validated on five
    further terms) and the rigorous norm constant K * D, where
    Psi(B^n) <= K * ||B^n||_inf and the block inequality
    ||B^(sM+r)|| <= ||B^M||^s ||B^r|| <= D * rho_t^(sM+r) holds whenever
    ||B^M|| <= rho_t^M (checked exactly).
    """

    def __init__(self, B, U, V, R_plus: Fraction):
        self.B = B
        self.U = U
        self.V = V
        self.R_plus = R_plus
        self.psis = [0]  # constant term: the series starts at n = 1
        self.norms = [1]
        self._power = identity(len(B))
        self.K = max(sum(abs(c) for c in u) for u in U) * sum(
            max(abs(c) for c in v) for v in V
        )
        self.tail_C = None
        self.tail_rho = None
        self.n_terms = 0

    def extend_to(self, n: int):
        while len(self.psis) <= n:
            self._power = mat_mul(self._power, self.B)
            value = psi(self._power, self.U, self.V)
            if value < 0:
                raise ValueError("negative series coefficient; U must contain 0")
            self.psis.append(value)
            self.norms.append(_infinity_norm(self._power))

    def settle(self, n_terms: int):
        """Fix the envelope for a polynomial truncation at n_terms terms."""
        self.extend_to(n_terms + 5)
        M = n_terms
        rho_t = _dyadic_upper(max(self.R_plus, _upper_root(self.norms[M], M)), 96)
        assert rho_t**M >= self.norms[M]
        D = max(Fraction(self.norms[r]) / rho_t**r for r in range(M + 1))
        last = range(max(1, M - 9), M + 1)
        C_emp = 4 * max(Fraction(self.psis[n]) / self.R_plus**n for n in last)
        for k in range(M + 1, M + 6):
            if self.psis[k] > C_emp * self.R_plus**k:
                return False  # validation failed: caller doubles n_terms
        self.tail_C = _dyadic_upper(max(C_emp, self.K * D), 64)
        self.tail_rho = rho_t
        self.n_terms = M
        return True

    # certified bounds for S(x) = sum_{n>=1} Psi(B^n) x^n at rational x
    def lower(self, x: Fraction) -> Fraction:
        return _poly_at(self.psis[: self.n_terms + 1], x)

    def tail(self, x: Fraction) -> Fraction:
        return _tail_bound(self.n_terms + 1, x, self.tail_C, self.tail_rho)

    def upper(self, x: Fraction) -> Fraction:
        return self.lower(x) + self.tail(x)


def solve_dyndeg(
    A,
    N: int,
    U,
    V,
    tolerance,
    *,
    start_terms: int = 50,
    max_terms: int = 6400,
    residual_cap=Fraction(1, 10**10),
) -> SeriesSolveResult:
    """Certified enclosure of lambda with sum_{n>=1} Psi(A^{Nn}) lambda^-n = 1.

    Returns a SeriesSolveResult whose lambda enclosure has width at most
    ``tolerance`` and whose residual interval lies within ``residual_cap``.
    Raises NoRootInRange when the series provably stays below 1 on the
    whole certified domain (0, x_max], x_max just under rho(A)^-N.
    """
    if N < 1:
        raise ValueError("N must be a positive integer")
    tolerance = Fraction(tolerance)
    residual_cap = Fraction(residual_cap)
    if tolerance <= 0 or residual_cap <= 0:
        raise ValueError("tolerance and residual_cap must be positive")

    sd = spectral_data(A, Fraction(1, 10**30))
    with enclosure_context(sd.precision):
        rho_plus = mpf_to_fraction(sd.spectral_radius().hi)
    if rho_plus <= 0:
        raise ValueError("spectral radius bound must be positive")

    env = _Envelope(mat_pow(A, N), U, V, rho_plus**N)
    n_terms = start_terms
    while not env.settle(n_terms):
        n_terms *= 2
        if n_terms > max_terms:
            raise PrecisionCeiling("tail-constant validation kept failing")

    def harden(predicate):
        # re-settle with more terms until a certified decision emerges
        nonlocal n_terms
        while True:
            out = predicate()
            if out is not None:
                return out
            n_terms *= 2
            if n_terms > max_terms:
                raise PrecisionCeiling(
                    f"no certified decision within {max_terms} series terms"
                )
            while not env.settle(n_terms):
                n_terms *= 2
                if n_terms > max_terms:
                    raise PrecisionCeiling("tail-constant validation kept failing")

    x_max = (1 - Fraction(1, 64)) / env.tail_rho
    grid = [x_max * k / 32 for k in range(1, 33)]

    def bracket():
        # first grid point certified past 1, or a proof none exists
        crossing = next((k for k, xk in enumerate(grid) if env.lower(xk) >= 1), None)
        if crossing is None:
            if env.upper(x_max) < 1:
                return "no-root"
            return None  # undecided at x_max: more terms
        lo = grid[crossing - 1] if crossing else grid[0] / 2
        while env.lower(lo) >= 1:
            lo /= 2
        if env.upper(lo) < 1:
            return lo, grid[crossing]
        return None  # tail too coarse to certify the left endpoint

    located = harden(bracket)
    if located == "no-root":
        raise NoRootInRange(f"series stays below 1 on (0, {float(x_max):.6g}]")
    x_lo, x_hi = located

    # strict-increase certificate on a 32-point grid across the bracket
    def monotone():
        pts = [x_lo + (x_hi - x_lo) * j / 31 for j in range(32)]
        for a, b in zip(pts, pts[1:]):
            if not env.upper(a) < env.lower(b):
                return None
        return True

    harden(monotone)

    # the tail must be well under the residual cap, or no bracket width
    # would ever bring the residual inside it
    harden(lambda: True if env.tail(x_hi) <= residual_cap / 4 else None)

    # exact-rational bisection with certified side decisions; leave a sliver
    # of both budgets for the outward rounding of the reported enclosures
    margin = Fraction(65535, 65536)

    def done() -> bool:
        lam_width = 1 / x_lo - 1 / x_hi
        if lam_width > tolerance * margin:
            return False
        lo_res = env.lower(x_lo) - 1
        hi_res = env.upper(x_hi) - 1
        cap = residual_cap * margin
        return -cap <= lo_res and hi_res <= cap

    while not done():
        m = (x_lo + x_hi) / 2

        def side():
            p = env.lower(m)
            if p >= 1:
                return "hi"
            if p + env.tail(m) < 1:
                return "lo"
            return None

        if harden(side) == "hi":
            x_hi = m
        else:
            x_lo = m

    assert env.upper(x_lo) < 1 <= env.lower(x_hi)
    return SeriesSolveResult(
        lambda_enclosure=_wrap_interval(1 / x_hi, 1 / x_lo),
        n_terms_used=env.n_terms,
        tail_bound_at_root=_dyadic_upper(env.tail(x_hi), 512),
        residual=_wrap_interval(env.lower(x_lo) - 1, env.upper(x_hi) - 1),
        x_bracket=(x_lo, x_hi),
        tail_constant=env.tail_C,
        tail_base=env.tail_rho,
    )
