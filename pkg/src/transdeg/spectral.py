"""Certified eigenvalue data: validated root enclosures of characteristic
polynomials, identification of the leading complex-conjugate pair, the
normalized angle theta = arg(xi)/2pi, eigenvector enclosures, the twist
ratios sigma(Y, v, w), and the piecewise-constant vector function gamma.

Root certification is seeded by mpmath.polyroots and validated by an
interval Newton step: if N(X) = mid(X) - P(mid(X))/P'(X) lands strictly
inside X, then X contains exactly one (simple) root.  Midpoint values are
evaluated in exact rational arithmetic, so the only outward rounding is
in the interval division.  Real roots are certified on the real line;
complex roots are certified in the upper half-plane and mirrored, which
keeps every downstream quantity exactly conjugate-symmetric.

Eigenvectors come from the adjugate identity: for a simple eigenvalue x,
adj(xI - A) is rank one and equals (right eigvec) . (left eigvec)^T up to
scale, so certified rows/columns of the adjugate give certified
eigenvector enclosures for any d without solving linear systems.  The
adjugate itself is a polynomial in x with integer matrix coefficients
(computed once, by the trace recurrence that also yields the
characteristic polynomial).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv, mp

from .errors import (
    CircleStraddle,
    DenominatorNearZero,
    OnBreakpoint,
    PrecisionCeiling,
    RootsNotSeparable,
)
from .exactcore.enclosures import (
    ComplexEnclosure,
    RealEnclosure,
    enclosure_context,
    precision_ceiling,
    unit_circle_point,
)
from .exactcore.matrices import char_poly, identity, inverse_unimodular, mat_mul, mat_vec
from .exactcore.polynomials import degree, normalize, poly_derivative, poly_gcd_q
from .exactcore.reconstruct import mpf_to_fraction
from .toric import d_set


# ---------------------------------------------------------------------------
# adjugate of (xI - A) as a polynomial in x

def adjugate_coefficient_matrices(A):
    """Integer matrices N_0..N_{d-1} with adj(xI - A) = sum_k x^{d-1-k} N_k.

    Recurrence: N_0 = I, N_k = A N_{k-1} + c_{d-k} I, where the c_i are
    the characteristic polynomial coefficients (low first, monic).  The
    closing identity A N_{d-1} = -c_0 I is asserted, which re-verifies
    both the recurrence and the characteristic polynomial.
    """
    d = len(A)
    coeffs = char_poly(A)  # (c_0, ..., c_{d-1}, 1), low first
    mats = [identity(d)]
    for k in range(1, d):
        c = coeffs[d - k]
        prev = mats[-1]
        nxt = mat_mul(A, prev)
        nxt = tuple(
            tuple(nxt[i][j] + (c if i == j else 0) for j in range(d))
            for i in range(d)
        )
        mats.append(nxt)
    closing = mat_mul(A, mats[-1])
    for i in range(d):
        for j in range(d):
            want = -coeffs[0] if i == j else 0
            if closing[i][j] != want:
                raise AssertionError("adjugate recurrence failed to close")
    return tuple(mats)


# ---------------------------------------------------------------------------
# exact rational evaluation helpers

def _eval_fraction(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _eval_fraction_complex(coeffs, re: Fraction, im: Fraction):
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def _eval_interval_real(coeffs, x: RealEnclosure) -> RealEnclosure:
    acc = RealEnclosure(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _eval_interval_complex(coeffs, x: ComplexEnclosure) -> ComplexEnclosure:
    acc = ComplexEnclosure(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _intersect_real(a: RealEnclosure, b: RealEnclosure) -> RealEnclosure:
    lo = a.lo if a.lo > b.lo else b.lo
    hi = a.hi if a.hi < b.hi else b.hi
    if lo > hi:
        raise ValueError("empty intersection")
    return RealEnclosure(lo, hi)


def _intersect_complex(a: ComplexEnclosure, b: ComplexEnclosure) -> ComplexEnclosure:
    return ComplexEnclosure(_intersect_real(a.re, b.re), _intersect_real(a.im, b.im))


class _Retry(Exception):
    """Internal: this precision attempt failed; escalate."""


# ---------------------------------------------------------------------------
# certified roots

@dataclass(frozen=True)
class CertifiedRoots:
    """Pairwise-disjoint validated enclosures of all roots of a squarefree
    integer polynomial, conjugate-symmetric by construction."""

    roots: tuple            # d ComplexEnclosures, sorted by (re, im)
    pair_indices: tuple     # (i_lower, i_upper) per conjugate pair
    real_indices: tuple     # indices of certified-real roots
    precision: int

    def __len__(self):
        return len(self.roots)


def _newton_real(coeffs, dcoeffs, seed, delta, target_width):
    X = RealEnclosure(seed - delta, seed + delta)
    contracted = False
    for _ in range(64):
        m = (mpf_to_fraction(X.lo) + mpf_to_fraction(X.hi)) / 2
        pm = _eval_fraction(coeffs, m)
        dP = _eval_interval_real(dcoeffs, X)
        try:
            N = RealEnclosure(m) - RealEnclosure(pm) / dP
        except DenominatorNearZero:
            raise _Retry
        if not contracted:
            if N.lo > X.lo and N.hi < X.hi:
                contracted = True
            else:
                raise _Retry
        try:
            X2 = _intersect_real(N, X)
        except ValueError:
            raise _Retry
        if X2.width() >= X.width() and contracted and X.width() <= target_width:
            break
        stalled = X2.width() >= X.width()
        X = X2
        if X.width() <= target_width or stalled:
            break
    if not contracted or X.width() > target_width:
        raise _Retry
    return X


def _newton_complex(coeffs, dcoeffs, seed_re, seed_im, delta, target_width):
    B = ComplexEnclosure(
        RealEnclosure(seed_re - delta, seed_re + delta),
        RealEnclosure(seed_im - delta, seed_im + delta),
    )
    contracted = False
    for _ in range(64):
        mr = (mpf_to_fraction(B.re.lo) + mpf_to_fraction(B.re.hi)) / 2
        mi = (mpf_to_fraction(B.im.lo) + mpf_to_fraction(B.im.hi)) / 2
        pr, pi = _eval_fraction_complex(coeffs, mr, mi)
        dP = _eval_interval_complex(dcoeffs, B)
        try:
            step = ComplexEnclosure(RealEnclosure(pr), RealEnclosure(pi)) / dP
        except DenominatorNearZero:
            raise _Retry
        N = ComplexEnclosure(RealEnclosure(mr), RealEnclosure(mi)) - step
        if not contracted:
            inside = (
                N.re.lo > B.re.lo and N.re.hi < B.re.hi
                and N.im.lo > B.im.lo and N.im.hi < B.im.hi
            )
            if inside:
                contracted = True
            else:
                raise _Retry
        try:
            B2 = _intersect_complex(N, B)
        except ValueError:
            raise _Retry
        stalled = B2.width() >= B.width()
        B = B2
        if B.width() <= target_width or stalled:
            break
    if not contracted or B.width() > target_width:
        raise _Retry
    return B


def _boxes_disjoint(a: ComplexEnclosure, b: ComplexEnclosure) -> bool:
    re_apart = a.re.hi < b.re.lo or b.re.hi < a.re.lo
    im_apart = a.im.hi < b.im.lo or b.im.hi < a.im.lo
    return re_apart or im_apart


def _roots_attempt(coeffs, dcoeffs, target_width, prec):
    d = degree(coeffs)
    with mp.workprec(prec):
        try:
            seeds = mp.polyroots(
                list(reversed(coeffs)), maxsteps=100 + 20 * d, extraprec=prec
            )
        except mp.NoConvergence:
            raise _Retry
        real_cut = mp.mpf(2) ** (-(prec // 3))
        reals, uppers = [], []
        for s in seeds:
            s = mp.mpc(s)
            if abs(s.imag) <= real_cut * (1 + abs(s)):
                reals.append(s.real)
            elif s.imag > 0:
                uppers.append(s)
        if len(reals) + 2 * len(uppers) != d:
            raise _Retry
        points = [mp.mpc(r) for r in reals] + uppers + [s.conjugate() for s in uppers]
        # box half-width: a bit beyond the expected seed error, but never
        # crossing a neighbouring root (keeps P'(box) tight and nonzero)
        seed_err = mp.mpf(2) ** (-(prec // 2))
        deltas = {}
        for k, p in enumerate(points):
            dl = seed_err * (1 + abs(p))
            if len(points) > 1:
                dist = min(abs(p - q) for j, q in enumerate(points) if j != k)
                dl = min(dl, dist / 8)
            deltas[k] = dl
        if any(dl <= 0 for dl in deltas.values()):
            raise _Retry

    with enclosure_context(prec):
        tw = iv.mpf(target_width.numerator) / iv.mpf(target_width.denominator)
        enclosures = []
        pair_of = {}
        real_flags = []
        for k, r in enumerate(reals):
            X = _newton_real(coeffs, dcoeffs, mpf_to_fraction(r), mpf_to_fraction(mp.mpf(deltas[k])), tw.b)
            enclosures.append(ComplexEnclosure(X, RealEnclosure(0)))
            real_flags.append(True)
        for k, s in enumerate(uppers):
            idx = len(reals) + k
            B = _newton_complex(
                coeffs,
                dcoeffs,
                mpf_to_fraction(s.real),
                mpf_to_fraction(s.imag),
                mpf_to_fraction(mp.mpf(deltas[idx])),
                tw.b,
            )
            lower = B.conj()
            enclosures.append(lower)
            real_flags.append(False)
            enclosures.append(B)
            real_flags.append(False)
            pair_of[len(enclosures) - 2] = len(enclosures) - 1

        for i in range(len(enclosures)):
            for j in range(i + 1, len(enclosures)):
                if not _boxes_disjoint(enclosures[i], enclosures[j]):
                    raise _Retry

        order = sorted(
            range(d),
            key=lambda k: (float(enclosures[k].re.mid()), float(enclosures[k].im.mid())),
        )
        rank = {old: new for new, old in enumerate(order)}
        roots = tuple(enclosures[k] for k in order)
        pairs = tuple(
            tuple(sorted((rank[a], rank[b]))) for a, b in pair_of.items()
        )
        real_idx = tuple(rank[k] for k in range(d) if real_flags[k])
        return CertifiedRoots(
            roots=roots,
            pair_indices=tuple(sorted(pairs)),
            real_indices=tuple(sorted(real_idx)),
            precision=prec,
        )


def certified_roots(coeffs, target_width=Fraction(1, 10**30), start_prec=128,
                    ceiling=None) -> CertifiedRoots:
    """Validated, pairwise-disjoint enclosures of all roots.

    ``coeffs`` low-degree-first with integer or rational entries; the
    polynomial must be squarefree.  Escalates working precision (doubling
    from ``start_prec``) until every enclosure has width <= target_width
    and all enclosures are disjoint; RootsNotSeparable at the ceiling.
    """
    coeffs = normalize(coeffs)
    if degree(coeffs) < 1:
        raise ValueError("need a nonconstant polynomial")
    if any(isinstance(c, Fraction) for c in coeffs):
        from math import lcm

        mult = lcm(*(Fraction(c).denominator for c in coeffs))
        coeffs = tuple(int(Fraction(c) * mult) for c in coeffs)
    g = poly_gcd_q(coeffs, poly_derivative(coeffs))
    if degree(g) != 0:
        raise ValueError("polynomial is not squarefree")
    dcoeffs = poly_derivative(coeffs)
    if ceiling is None:
        ceiling = precision_ceiling()
    prec = start_prec
    while prec <= ceiling:
        try:
            return _roots_attempt(coeffs, dcoeffs, Fraction(target_width), prec)
        except _Retry:
            prec *= 2
    raise RootsNotSeparable(
        f"could not separate roots at width {target_width} within {ceiling} bits"
    )


# ---------------------------------------------------------------------------
# spectral data

@dataclass(frozen=True)
class SpectralData:
    """Certified eigen-data of an integer matrix with squarefree spectrum."""

    matrix: tuple
    char_coeffs: tuple
    roots: tuple                 # d ComplexEnclosures
    pair_indices: tuple
    real_indices: tuple
    leading_pair_indices: tuple | None   # (i_lower, i_upper) or None
    theta: RealEnclosure | None          # arg(xi)/2pi for the upper leading root
    modulus_rho: RealEnclosure | None    # |xi|
    eigvec_right: tuple          # per-root tuples of ComplexEnclosures
    eigvec_left: tuple
    pairings: tuple              # per-root <left, right> (nonzero certified)
    precision: int

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def spectral_radius(self) -> RealEnclosure:
        """Enclosure of max_i |root_i| (valid with or without a leading pair)."""
        moduli = [r.abs() for r in self.roots]
        lo = max(m.lo for m in moduli)
        hi = max(m.hi for m in moduli)
        return RealEnclosure(lo, hi)

    def leading_root(self) -> ComplexEnclosure:
        if self.leading_pair_indices is None:
            raise ValueError("no certified leading conjugate pair")
        return self.roots[self.leading_pair_indices[1]]


def _eigvec_data(A, adj_mats, root: ComplexEnclosure, dcoeffs):
    """(left_row, right_col, pairing) at a certified simple root."""
    d = len(A)
    powers = [ComplexEnclosure(RealEnclosure(1))]
    for _ in range(d - 1):
        powers.append(powers[-1] * root)
    # adj(xI - A) = sum_k x^{d-1-k} N_k evaluated entrywise
    adj = [
        [
            sum(
                (powers[d - 1 - k] * adj_mats[k][i][j] for k in range(d)),
                start=ComplexEnclosure(RealEnclosure(0)),
            )
            for j in range(d)
        ]
        for i in range(d)
    ]
    dP = _eval_interval_complex(dcoeffs, root)
    for i0 in range(d):
        for j0 in range(d):
            if adj[i0][j0].is_nonzero():
                pairing = adj[i0][j0] * dP
                if not pairing.is_nonzero():
                    continue
                left = tuple(adj[i0][j] for j in range(d))
                right = tuple(adj[i][j0] for i in range(d))
                return left, right, pairing
    raise _Retry


def spectral_data(A, target_width=Fraction(1, 10**30), ceiling=None) -> SpectralData:
    """Full certified spectral package for A (char poly must be squarefree).

    The leading-pair certificate: exactly one complex-conjugate pair
    strictly dominates every other root in modulus.  Outcomes: certified
    true (indices recorded) or None — either a real root provably on top,
    or an ordering that stays undecidable after escalation (an exact
    modulus tie looks the same at every precision).
    """
    P = char_poly(A)
    if degree(poly_gcd_q(P, poly_derivative(P))) != 0:
        raise ValueError("characteristic polynomial is not squarefree")
    if ceiling is None:
        ceiling = precision_ceiling()
    dcoeffs = poly_derivative(P)
    adj_mats = adjugate_coefficient_matrices(A)

    width = Fraction(target_width)
    for attempt in range(4):
        cert = certified_roots(P, width, ceiling=ceiling)
        prec = max(cert.precision, 64)
        with enclosure_context(prec):
            try:
                return _assemble_spectral(
                    A, P, cert, adj_mats, dcoeffs, prec, final=(attempt == 3)
                )
            except _Retry:
                width = width / 10**15
    raise PrecisionCeiling("spectral certification failed after refinement")


def _assemble_spectral(A, P, cert, adj_mats, dcoeffs, prec, final=False) -> SpectralData:
    roots = cert.roots
    moduli = [r.abs() for r in roots]

    leading = None
    if cert.pair_indices:
        best = max(cert.pair_indices, key=lambda p: float(moduli[p[1]].mid()))
        m_pair = moduli[best[1]]
        certified = True
        for k, m in enumerate(moduli):
            if k in best:
                continue
            if m.strictly_less(m_pair):
                continue
            if m_pair.strictly_less(m):
                certified = False  # some other root provably at least as large
                break
            if final:
                certified = False  # undecidable ordering: no certificate
                break
            raise _Retry("cannot order root moduli")
        if certified:
            # orient: lower (im < 0) first, upper second
            i, j = best
            if not roots[j].im.is_positive():
                i, j = j, i
            if not roots[j].im.is_positive():
                if final:
                    certified = False
                else:
                    raise _Retry("leading pair has unresolved imaginary sign")
        if certified:
            leading = (i, j)

    theta = None
    rho = None
    if leading is not None:
        xi = roots[leading[1]]
        try:
            angle = xi.arg()
        except CircleStraddle:
            raise _Retry("leading root argument straddles the branch cut")
        two_pi = RealEnclosure._raw(2 * iv.pi)
        theta = angle / two_pi
        rho = xi.abs()

    lefts, rights, pairings = [], [], []
    by_index = {}
    for i, j in cert.pair_indices:
        l_up, r_up, pr_up = _eigvec_data(A, adj_mats, roots[j], dcoeffs)
        by_index[j] = (l_up, r_up, pr_up)
        by_index[i] = (
            tuple(x.conj() for x in l_up),
            tuple(x.conj() for x in r_up),
            pr_up.conj(),
        )
    for k in cert.real_indices:
        by_index[k] = _eigvec_data(A, adj_mats, roots[k], dcoeffs)
    for k in range(len(roots)):
        l, r, pr = by_index[k]
        lefts.append(l)
        rights.append(r)
        pairings.append(pr)

    return SpectralData(
        matrix=tuple(tuple(row) for row in A),
        char_coeffs=P,
        roots=roots,
        pair_indices=cert.pair_indices,
        real_indices=cert.real_indices,
        leading_pair_indices=leading,
        theta=theta,
        modulus_rho=rho,
        eigvec_right=tuple(rights),
        eigvec_left=tuple(lefts),
        pairings=tuple(pairings),
        precision=prec,
    )


# ---------------------------------------------------------------------------
# twist ratios sigma

def _dot_int_enc(ints, encs):
    acc = ComplexEnclosure(RealEnclosure(0))
    for c, e in zip(ints, encs):
        if c:
            acc = acc + e * c
    return acc


def sigma(Y, v, w, spectral: SpectralData, conjugate_pair=False) -> ComplexEnclosure:
    """sigma(Y, v, w) = -conj(zeta)/zeta with
    zeta = <l, Yv> <w, Y^{-1} r> / <l, r>,
    l, r the left/right eigenvectors at the leading eigenvalue.  The
    normalization by <l, r> makes the value independent of eigenvector
    scaling.  |sigma| = 1 identically; with the pair roles swapped the
    value is the reciprocal."""
    if spectral.leading_pair_indices is None:
        raise ValueError("sigma requires a certified leading conjugate pair")
    if not any(v) or not any(w):
        raise ValueError("v and w must be nonzero")
    idx = spectral.leading_pair_indices[0 if conjugate_pair else 1]
    left = spectral.eigvec_left[idx]
    right = spectral.eigvec_right[idx]
    pairing = spectral.pairings[idx]
    with enclosure_context(spectral.precision):
        Yv = mat_vec(Y, v)
        Yinv = inverse_unimodular(Y)
        r_back = [_dot_int_enc(row, right) for row in Yinv]
        z = _dot_int_enc(Yv, left) * _dot_int_enc(w, r_back)
        zeta = z / pairing
        return -(zeta.conj() / zeta)


# ---------------------------------------------------------------------------
# the piecewise-constant function gamma

@dataclass(frozen=True)
class PiecewiseGamma:
    """gamma as a function on R/Z: constant vector values between certified
    breakpoint enclosures.

    ``values[k]`` is the vector (gamma_1, ..., gamma_d) on the open piece
    between breakpoints k and k+1 (cyclically; the last piece wraps
    through 1).  ``selectors[k]`` records, per v in V, which u in U wins
    on that piece."""

    breakpoints: tuple   # sorted RealEnclosures inside [0, 1)
    values: tuple        # per-piece tuple of d ComplexEnclosures
    selectors: tuple     # per-piece tuple of chosen u (one per v in V)
    defining_data: tuple  # (A, Y, U, V)
    spectral: SpectralData
    precision: int

    @property
    def piece_count(self) -> int:
        return len(self.breakpoints)

    def piece_for(self, t: RealEnclosure) -> int:
        """Index of the piece containing t in [0, 1); OnBreakpoint if t
        cannot be certified to avoid every breakpoint enclosure."""
        bps = self.breakpoints
        if not bps:
            return 0
        m = len(bps)
        for k, b in enumerate(bps):
            if not (t.hi < b.lo or b.hi < t.lo):
                raise OnBreakpoint(f"t overlaps breakpoint #{k}")
        if t.hi < bps[0].lo:
            return m - 1  # wrap piece, approached from the left of bp 0
        for k in range(m - 1):
            if bps[k].hi < t.lo and t.hi < bps[k + 1].lo:
                return k
        if bps[-1].hi < t.lo:
            return m - 1
        raise OnBreakpoint("t cannot be localized strictly between breakpoints")

    def value_at(self, t) -> tuple:
        if isinstance(t, Fraction):
            t = RealEnclosure(t)
        return self.values[self.piece_for(t)]


def _arg_robust(z: ComplexEnclosure) -> RealEnclosure:
    """Argument in (-pi, 3pi) avoiding the branch cut by rotating if needed."""
    try:
        return z.arg()
    except CircleStraddle:
        pi_enc = RealEnclosure._raw(iv.pi * 1)
        return (-z).arg() + pi_enc


def _mod1(t: RealEnclosure) -> RealEnclosure:
    from mpmath import floor as mfloor

    k = int(mfloor(t.lo))
    shifted = t - k
    if shifted.lo < 0 or shifted.hi >= 1:
        k2 = int(mfloor(shifted.lo))
        shifted = shifted - k2
        if shifted.lo < 0 or shifted.hi >= 1:
            raise PrecisionCeiling("angle enclosure straddles the period boundary")
    return shifted


def gamma_function(A, Y, U, V, precision: int = 400) -> PiecewiseGamma:
    """Construct gamma for the conjugated map with matrix Y^{-1} A Y.

    Breakpoints are the angles t in [0,1) with e^{4 pi i t} = sigma(Y,v,w)
    for v in V and w a nonzero difference of U; between them the selector
    argmax_{u in U} Re(e^{2 pi i t} eta_{v,u}) is constant, where
    eta_{v,u} = <l, Yv><u, Y^{-1} r>/<l, r>.  Values on each piece are

        gamma_i = sum_v <l_i, Yv> <u*(v), Y^{-1} r_i> / <l_i, r_i>,

    one complex enclosure per eigenvalue index i, and then
    Psi(( Y^{-1} A Y )^j) = sum_i gamma_i(j theta) lambda_i^j   (eq. of
    motion used by psi_via_gamma; exact for all large j)."""
    with enclosure_context(precision):
        sd = spectral_data(A, target_width=Fraction(1, 2 ** max(precision - 32, 64)))
        if sd.leading_pair_indices is None:
            raise ValueError("gamma requires a certified leading conjugate pair")
        d = sd.dim
        U = tuple(tuple(u) for u in U)
        V = tuple(tuple(v) for v in V)
        D = d_set(U)
        Yt = tuple(tuple(row) for row in Y)
        Yinv = inverse_unimodular(Yt)

        # per-root transported eigenvector data
        a_coeff = []   # a_coeff[i][v] = <l_i, Yv>/<l_i, r_i>
        c_coeff = []   # c_coeff[i][u] = <u, Y^{-1} r_i>
        for i in range(d):
            left, right, pairing = (
                sd.eigvec_left[i],
                sd.eigvec_right[i],
                sd.pairings[i],
            )
            r_back = [_dot_int_enc(row, right) for row in Yinv]
            a_coeff.append({v: _dot_int_enc(mat_vec(Yt, v), left) / pairing for v in V})
            c_coeff.append({u: _dot_int_enc(u, r_back) for u in U})

        lead = sd.leading_pair_indices[1]

        # breakpoints: e^{4 pi i t} = sigma(v, w)
        sigmas = []
        for v in V:
            for w in D:
                sigmas.append(sigma(Yt, v, w, sd))
        # deduplicate by overlap
        classes = []
        for s in sigmas:
            if float(s.width()) > 1e-30:
                raise PrecisionCeiling("sigma enclosure too wide to deduplicate")
            for cls in classes:
                if cls.overlaps(s):
                    break
            else:
                classes.append(s)

        four_pi = RealEnclosure._raw(4 * iv.pi)
        raw_bps = []
        for s in classes:
            base = _arg_robust(s) / four_pi
            for half in (Fraction(0), Fraction(1, 2)):
                raw_bps.append(_mod1(base + RealEnclosure(half)))
        raw_bps.sort(key=lambda b: float(b.lo))
        merged = []
        for b in raw_bps:
            if merged and not merged[-1].hi < b.lo:
                merged[-1] = RealEnclosure(merged[-1].lo, max(merged[-1].hi, b.hi))
            else:
                merged.append(b)
        # breakpoints near 0 and near 1 would merge across the wrap; distinct
        # switch angles cannot coincide mod 1, so this only means precision
        if len(merged) >= 2 and not (merged[-1].hi - 1) < merged[0].lo:
            raise PrecisionCeiling("breakpoints overlap across the period wrap")
        breakpoints = tuple(merged)
        if not breakpoints:
            raise PrecisionCeiling("no breakpoints found; selector cannot switch")

        # pieces and selectors
        m = len(breakpoints)
        values, selectors = [], []
        for k in range(m):
            lo_f = mpf_to_fraction(breakpoints[k].hi)
            hi_f = mpf_to_fraction(breakpoints[(k + 1) % m].lo) + (1 if k == m - 1 else 0)
            gap = hi_f - lo_f
            if gap <= 0:
                raise PrecisionCeiling("piece between breakpoints has no interior")
            samples = [lo_f + gap * q for q in (Fraction(1, 64), Fraction(1, 2), Fraction(63, 64))]
            chosen = None
            for t_s in samples:
                e = unit_circle_point(RealEnclosure(t_s))
                pick = []
                for v in V:
                    scores = {u: (e * a_coeff[lead][v] * c_coeff[lead][u]).re for u in U}
                    best_u = max(U, key=lambda u: float(scores[u].mid()))
                    for u in U:
                        if u == best_u:
                            continue
                        if not scores[u].strictly_less(scores[best_u]):
                            raise PrecisionCeiling(
                                "selector tie inside a piece; raise precision"
                            )
                    pick.append(best_u)
                pick = tuple(pick)
                if chosen is None:
                    chosen = pick
                elif chosen != pick:
                    raise PrecisionCeiling("selector not constant across a piece")
            gam = tuple(
                sum(
                    (a_coeff[i][v] * c_coeff[i][chosen[vi]] for vi, v in enumerate(V)),
                    start=ComplexEnclosure(RealEnclosure(0)),
                )
                for i in range(d)
            )
            values.append(gam)
            selectors.append(chosen)

        return PiecewiseGamma(
            breakpoints=breakpoints,
            values=tuple(values),
            selectors=tuple(selectors),
            defining_data=(tuple(tuple(r) for r in A), Yt, U, V),
            spectral=sd,
            precision=precision,
        )


def psi_via_gamma(pg: PiecewiseGamma, j: int) -> RealEnclosure:
    """Certified enclosure of sum_i gamma_i(j theta) lambda_i^j.

    When j is large enough for the limiting selector to be exact, this
    encloses the integer Psi_{U,V-or-P...}(M^j) for the conjugated matrix
    M = Y^{-1} A Y; the imaginary parts cancel and are checked to contain
    zero."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    with enclosure_context(pg.precision):
        theta = pg.spectral.theta
        t = _mod1(theta * j)
        gam = pg.value_at(t)
        total = ComplexEnclosure(RealEnclosure(0))
        for i, root in enumerate(pg.spectral.roots):
            total = total + gam[i] * root**j
        if not total.im.contains(0):
            raise PrecisionCeiling("imaginary parts failed to cancel")
        return total.re
