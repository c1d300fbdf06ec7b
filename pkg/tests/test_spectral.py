"""Certified eigen-data, sigma invariants, and the piecewise gamma function."""

from fractions import Fraction

import pytest

import frozen
from transdeg.errors import OnBreakpoint, RootsNotSeparable
from transdeg.exactcore.enclosures import (
    ComplexEnclosure,
    RealEnclosure,
    enclosure_context,
)
from transdeg.exactcore.matrices import adjugate, identity, mat_pow, mat_vec
from transdeg.exactcore.polynomials import poly_derivative
from transdeg.exactcore.reconstruct import mpf_to_fraction
from transdeg.dynamics import psi
from transdeg.spectral import (
    adjugate_coefficient_matrices,
    certified_roots,
    gamma_function,
    psi_via_gamma,
    sigma,
    spectral_data,
)
from transdeg.toric import canonical_sets

DATA3 = canonical_sets(3)
TARGET = Fraction(1, 10**50)

# the frozen decimal strings carry 60 significant digits; their last digit
# rounds, so "equal" means the enclosure meets the string +- this band
DEC_BAND = Fraction(1, 10**58)

# any upper-triangular integer matrix has its diagonal as spectrum
ALL_REAL = ((1, 5, -2), (0, 2, 7), (0, 0, 3))


def near(enc: RealEnclosure, decimal: str) -> bool:
    f = Fraction(decimal)
    return not (
        mpf_to_fraction(enc.hi) < f - DEC_BAND
        or f + DEC_BAND < mpf_to_fraction(enc.lo)
    )


@pytest.fixture(scope="module")
def sd_companion():
    return spectral_data(frozen.COMPANION, TARGET)


@pytest.fixture(scope="module")
def sd_a():
    return spectral_data(frozen.A_MATRIX, TARGET)


@pytest.fixture(scope="module")
def gamma_worked_example():
    return gamma_function(
        mat_pow(frozen.COMPANION, 7),
        frozen.Y_INV,
        DATA3.U_set,
        DATA3.V_set,
        precision=400,
    )


class TestAdjugatePolynomial:
    @pytest.mark.parametrize("A", [frozen.COMPANION, frozen.A_MATRIX, ALL_REAL])
    def test_matches_integer_adjugate(self, A):
        # sum_k s^{d-1-k} N_k must equal adj(s I - A) for any scalar s
        mats = adjugate_coefficient_matrices(A)
        d = len(A)
        for s in (0, 1, -3, 11):
            sIA = tuple(
                tuple(s * int(i == j) - A[i][j] for j in range(d)) for i in range(d)
            )
            expected = adjugate(sIA)
            got = tuple(
                tuple(
                    sum(s ** (d - 1 - k) * mats[k][i][j] for k in range(d))
                    for j in range(d)
                )
                for i in range(d)
            )
            assert got == expected


class TestCertifiedRoots:
    def test_companion_cubic(self):
        cert = certified_roots(frozen.CHAR_COMPANION, TARGET)
        assert len(cert.roots) == 3
        assert cert.real_indices == (2,)  # sorted by (re, im): pair comes first
        assert len(cert.pair_indices) == 1
        real = cert.roots[cert.real_indices[0]]
        assert near(real.re, frozen.REAL_ROOT)
        assert real.im.contains(0)

    def test_pair_orientation_and_sorting(self):
        cert = certified_roots(frozen.CHAR_A, TARGET)
        i, j = cert.pair_indices[0]
        assert cert.roots[i].im.is_negative()
        assert cert.roots[j].im.is_positive()
        mids = [float(r.re.mid()) for r in cert.roots]
        assert mids == sorted(mids)

    def test_width_honored(self):
        cert = certified_roots(frozen.CHAR_A, TARGET)
        for r in cert.roots:
            assert float(r.re.width()) <= 1e-50
            assert float(r.im.width()) <= 1e-50

    def test_close_roots_separate(self):
        # (t^2 - 2)(2^30 t^2 - (2^31 + 1)): two real pairs 2.6e-10 apart
        s = 2**30
        p = (2 * (2 * s + 1), 0, -(2 * s + 2 * s + 1 + 2 * s), 0, s)
        cert = certified_roots(p, Fraction(1, 10**30))
        assert len(cert.roots) == 4
        assert cert.real_indices == (0, 1, 2, 3)

    def test_not_squarefree_rejected(self):
        with pytest.raises(ValueError):
            certified_roots((1, -2, 1), TARGET)  # (t-1)^2

    def test_ceiling_exhaustion(self):
        with pytest.raises(RootsNotSeparable):
            certified_roots(frozen.CHAR_COMPANION, Fraction(1, 10**400), ceiling=256)


class TestSpectralData:
    def test_companion_frozen_constants(self, sd_companion):
        sd = sd_companion
        assert sd.leading_pair_indices is not None
        xi = sd.roots[sd.leading_pair_indices[1]]
        assert near(xi.re, frozen.XI_RE)
        assert near(xi.im, frozen.XI_IM)
        assert near(sd.theta, frozen.THETA_COMPANION)
        assert near(sd.modulus_rho, frozen.RHO_COMPANION)
        assert near(sd.roots[sd.real_indices[0]].re, frozen.REAL_ROOT)

    def test_a_frozen_constants(self, sd_a):
        sd = sd_a
        xi = sd.roots[sd.leading_pair_indices[1]]
        assert near(xi.re, frozen.XI_A_RE)
        assert near(xi.im, frozen.XI_A_IM)
        assert near(sd.theta, frozen.THETA_A)
        assert near(sd.modulus_rho, frozen.RHO_A)

    def test_vieta_invariants(self, sd_a):
        sd = sd_a
        with enclosure_context(sd.precision):
            total = ComplexEnclosure(RealEnclosure(0))
            prod = ComplexEnclosure(RealEnclosure(1))
            for r in sd.roots:
                total = total + r
                prod = prod * r
            trace = sum(frozen.A_MATRIX[i][i] for i in range(3))
            assert total.re.contains(trace) and total.im.contains(0)
            assert prod.re.contains(1) and prod.im.contains(0)  # det A = 1

    def test_unit_norm_relation(self, sd_companion):
        # |xi|^2 * (real root) = |det| = 1 for the reciprocal-spectrum cubic
        sd = sd_companion
        with enclosure_context(sd.precision):
            k = sd.leading_pair_indices[1]
            prod = sd.roots[k].abs2() * sd.roots[sd.real_indices[0]].re
            assert prod.contains(1)

    @pytest.mark.parametrize("matrix", [frozen.COMPANION, frozen.A_MATRIX])
    def test_eigvec_identities(self, matrix):
        sd = spectral_data(matrix, TARGET)
        d = sd.dim
        with enclosure_context(sd.precision):
            for k in range(d):
                lam = sd.roots[k]
                r = sd.eigvec_right[k]
                l = sd.eigvec_left[k]
                for i in range(d):
                    Ar = sum(
                        (r[j] * matrix[i][j] for j in range(d)),
                        start=ComplexEnclosure(RealEnclosure(0)),
                    )
                    assert Ar.overlaps(r[i] * lam)
                    lA = sum(
                        (l[j] * matrix[j][i] for j in range(d)),
                        start=ComplexEnclosure(RealEnclosure(0)),
                    )
                    assert lA.overlaps(l[i] * lam)
                assert sd.pairings[k].is_nonzero()

    def test_all_real_spectrum_has_no_leading_pair(self):
        sd = spectral_data(ALL_REAL, Fraction(1, 10**20))
        assert sd.leading_pair_indices is None
        assert sd.theta is None and sd.modulus_rho is None
        assert sd.real_indices == (0, 1, 2)
        with enclosure_context(sd.precision):
            assert sd.spectral_radius().contains(3)

    def test_repeated_eigenvalue_rejected(self):
        with pytest.raises(ValueError):
            spectral_data(identity(3), TARGET)

    def test_spectral_radius_a(self, sd_a):
        with enclosure_context(sd_a.precision):
            assert near(sd_a.spectral_radius(), frozen.RHO_A)


class TestSigma:
    def test_unit_modulus(self, sd_a):
        s = sigma(frozen.Y_INV, (1, 1, 0), (1, -1, 0), sd_a)
        with enclosure_context(sd_a.precision):
            assert s.abs2().contains(1)

    def test_scaling_invariance(self, sd_a):
        s1 = sigma(frozen.Y_INV, (1, 1, 0), (1, -1, 0), sd_a)
        s2 = sigma(frozen.Y_INV, (3, 3, 0), (2, -2, 0), sd_a)
        assert s1.overlaps(s2)

    def test_conjugate_pair_reciprocal(self, sd_a):
        v, w = (0, 1, 1), (1, 0, -1)
        s = sigma(frozen.Y_INV, v, w, sd_a)
        sc = sigma(frozen.Y_INV, v, w, sd_a, conjugate_pair=True)
        with enclosure_context(sd_a.precision):
            prod = s * sc
            assert prod.re.contains(1) and prod.im.contains(0)

    def test_distinct_value_count(self, sd_a):
        # one value per (v, u-u') class; the worked example collapses to 12
        values = []
        for v in DATA3.V_set:
            for w in DATA3.D_set:
                values.append(sigma(frozen.Y_INV, v, w, sd_a))
        classes = []
        for s in values:
            for c in classes:
                if s.overlaps(c):
                    break
            else:
                classes.append(s)
        assert len(classes) == frozen.SIGMA_DISTINCT

    def test_rejects_zero_vectors(self, sd_a):
        with pytest.raises(ValueError):
            sigma(frozen.Y_INV, (0, 0, 0), (1, 0, 0), sd_a)

    def test_rejects_all_real_spectrum(self):
        sd = spectral_data(ALL_REAL, Fraction(1, 10**20))
        with pytest.raises(ValueError):
            sigma(identity(3), (1, 0, 0), (0, 1, 0), sd)


class TestGammaFunction:
    def test_breakpoint_count(self, gamma_worked_example):
        assert gamma_worked_example.piece_count == frozen.SWITCH_ANGLE_COUNT

    def test_breakpoint_gaps(self, gamma_worked_example):
        bps = gamma_worked_example.breakpoints
        gaps = []
        for k in range(len(bps)):
            lo = mpf_to_fraction(bps[k].hi)
            hi = mpf_to_fraction(bps[(k + 1) % len(bps)].lo)
            if k + 1 == len(bps):
                hi += 1
            gaps.append(hi - lo)
        assert min(gaps) > Fraction(2, 1000)

    def test_selectors_live_in_u(self, gamma_worked_example):
        for sel in gamma_worked_example.selectors:
            assert len(sel) == len(DATA3.V_set)
            for u in sel:
                assert u in DATA3.U_set

    def test_values_conjugate_structure(self, gamma_worked_example):
        pg = gamma_worked_example
        sd = pg.spectral
        (lower, upper) = sd.leading_pair_indices
        with enclosure_context(pg.precision):
            for vals in pg.values:
                assert vals[sd.real_indices[0]].im.contains(0)
                assert vals[lower].overlaps(vals[upper].conj())

    def test_matches_exact_psi(self, gamma_worked_example):
        pg = gamma_worked_example
        U, V = DATA3.U_set, DATA3.V_set
        for j in list(range(1, 31)) + [40, 67, 100]:
            enc = psi_via_gamma(pg, j)
            exact = psi(mat_pow(frozen.A_MATRIX, j), U, V)
            assert enc.contains(exact), f"gamma representation missed at j={j}"

    def test_on_breakpoint_raises(self, gamma_worked_example):
        pg = gamma_worked_example
        t = mpf_to_fraction(pg.breakpoints[0].lo)
        with pytest.raises(OnBreakpoint):
            pg.value_at(t)

    def test_derivative_free_of_ambient_precision(self, gamma_worked_example):
        # same call twice under different ambient settings: identical bounds
        from mpmath import mp

        pg = gamma_worked_example
        old = mp.prec
        try:
            mp.prec = 53
            a = psi_via_gamma(pg, 73)
            mp.prec = 1000
            b = psi_via_gamma(pg, 73)
        finally:
            mp.prec = old
        assert mpf_to_fraction(a.lo) == mpf_to_fraction(b.lo)
        assert mpf_to_fraction(a.hi) == mpf_to_fraction(b.hi)
