"""Series-solver tests: certified root of sum Psi(A^{Nn}) x^n = 1."""

from fractions import Fraction

import pytest

import frozen
from transdeg.dyndeg import SeriesSolveResult, series_eval, solve_dyndeg
from transdeg.dynamics import degree_sequence
from transdeg.errors import DivergentTail, NoRootInRange
from transdeg.exactcore.enclosures import RealEnclosure, enclosure_context
from transdeg.exactcore.reconstruct import mpf_to_fraction

TOL = Fraction(1, 10**8)
DEC_BAND = Fraction(1, 10**58)

# one-dimensional streams: B^n v walks a single coordinate, so the
# coefficient sequence is exactly r^n (or exactly zero)
GEOM_A = ((3, 0), (0, 1))
GEOM_U = ((-1, 0),)
GEOM_V = ((-1, 0),)
ZERO_A = ((2, 0), (0, 1))
ZERO_U = ((0, 0), (-1, 0))
ZERO_V = ((1, 0),)


def width(enc: RealEnclosure) -> Fraction:
    return mpf_to_fraction(enc.hi) - mpf_to_fraction(enc.lo)


def near(enc: RealEnclosure, decimal: str) -> bool:
    f = Fraction(decimal)
    return not (
        mpf_to_fraction(enc.hi) < f - DEC_BAND
        or f + DEC_BAND < mpf_to_fraction(enc.lo)
    )


class TestSeriesEval:
    def test_zero_polynomial_zero_tail_is_exactly_zero(self):
        with enclosure_context(64):
            x = RealEnclosure(Fraction(1, 10))
        got = series_eval([0], x)
        assert mpf_to_fraction(got.lo) == 0 == mpf_to_fraction(got.hi)

    def test_exact_rational_matches_geometric_sum(self):
        k = 12
        x = Fraction(1, 3)
        expected = sum(x**n for n in range(1, k + 1))
        got = series_eval([0] + [1] * k, x)
        assert got.contains(expected)
        assert width(got) < Fraction(1, 2**180)

    def test_tail_envelope_captures_infinite_geometric_sum(self):
        # all-ones series: truth is x/(1-x); envelope |c_n| <= 1 * 1^n
        x = Fraction(1, 3)
        got = series_eval([0] + [1] * 40, x, tail_C=1, tail_rho=1)
        assert got.contains(Fraction(1, 2))

    def test_divergent_tail_raises(self):
        with pytest.raises(DivergentTail):
            series_eval([0, 1], Fraction(1, 2), tail_C=1, tail_rho=2)
        # boundary x == 1/rho is already divergent
        with pytest.raises(DivergentTail):
            series_eval([0, 1], Fraction(1, 3), tail_C=5, tail_rho=3)

    def test_negative_x_rejected(self):
        with pytest.raises(ValueError):
            series_eval([0, 1], Fraction(-1, 10))

    def test_monotone_in_x(self):
        coeffs = [0, 2, 5, 1, 7]
        vals = [series_eval(coeffs, Fraction(k, 100)) for k in (1, 5, 20, 60)]
        for a, b in zip(vals, vals[1:]):
            assert mpf_to_fraction(a.hi) <= mpf_to_fraction(b.lo)

    def test_interval_input_contains_exact_value(self):
        coeffs = [0, 3, 1, 4, 1, 5]
        exact = sum(c * Fraction(7, 100) ** n for n, c in enumerate(coeffs))
        with enclosure_context(128):
            x = RealEnclosure(Fraction(7, 100))
        assert series_eval(coeffs, x).contains(exact)


class TestSolveGeometric:
    def test_lambda_is_twice_the_ratio(self):
        # sum r^n x^n = 1 at x = 1/(2r), so lambda = 2r
        res = solve_dyndeg(GEOM_A, 1, GEOM_U, GEOM_V, TOL)
        assert res.lambda_enclosure.contains(Fraction(6))
        assert width(res.lambda_enclosure) <= TOL
        assert res.residual.contains(0)

    def test_power_of_the_stream(self):
        # N = 2 turns the stream into 9^n, so lambda = 18
        res = solve_dyndeg(GEOM_A, 2, GEOM_U, GEOM_V, TOL)
        assert res.lambda_enclosure.contains(Fraction(18))

    def test_zero_stream_has_no_root(self):
        with pytest.raises(NoRootInRange):
            solve_dyndeg(ZERO_A, 1, ZERO_U, ZERO_V, TOL)

    def test_bracket_straddles_one(self):
        res = solve_dyndeg(GEOM_A, 1, GEOM_U, GEOM_V, Fraction(1, 10**4))
        x_lo, x_hi = res.x_bracket
        assert x_lo < Fraction(1, 6) < x_hi
        coeffs = [0] + [3**n for n in range(1, res.n_terms_used + 1)]
        below = series_eval(coeffs, x_lo, res.tail_constant, res.tail_base)
        assert mpf_to_fraction(below.hi) < 1
        above = series_eval(coeffs, x_hi)  # polynomial part alone
        assert mpf_to_fraction(above.lo) >= 1


@pytest.fixture(scope="module")
def result():
    return solve_dyndeg(frozen.A_MATRIX, 1, frozen.U_SET, frozen.V_SET, TOL)


class TestSolveWorkedExample:
    def test_matches_frozen_dynamical_degree(self, result):
        assert near(result.lambda_enclosure, frozen.LAMBDA_1)

    def test_width_and_residual_meet_contract(self, result):
        assert width(result.lambda_enclosure) <= TOL
        assert result.residual.contains(0)
        lo = mpf_to_fraction(result.residual.lo)
        hi = mpf_to_fraction(result.residual.hi)
        assert -Fraction(1, 10**10) <= lo and hi <= Fraction(1, 10**10)

    def test_tail_bound_at_root_is_tiny(self, result):
        assert 0 <= result.tail_bound_at_root < Fraction(1, 10**30)

    def test_cross_validates_against_degree_ratios(self, result):
        seq = degree_sequence(frozen.A_MATRIX, 3, 26)
        ratio = Fraction(seq.deg_f[26], seq.deg_f[25])
        lam_lo = mpf_to_fraction(result.lambda_enclosure.lo)
        assert abs(ratio - lam_lo) / lam_lo < Fraction(1, 100)

    def test_tenfold_tolerance_gives_nested_enclosure(self, result):
        finer = solve_dyndeg(
            frozen.A_MATRIX, 1, frozen.U_SET, frozen.V_SET, TOL / 10
        )
        assert width(finer.lambda_enclosure) <= TOL / 10
        x_lo, x_hi = result.x_bracket
        f_lo, f_hi = finer.x_bracket
        assert x_lo <= f_lo and f_hi <= x_hi

    def test_high_precision_run_pins_sixty_digits(self):
        res = solve_dyndeg(
            frozen.A_MATRIX,
            1,
            frozen.U_SET,
            frozen.V_SET,
            Fraction(1, 10**62),
            residual_cap=Fraction(1, 10**60),
        )
        assert near(res.lambda_enclosure, frozen.LAMBDA_1)
        assert width(res.lambda_enclosure) <= Fraction(1, 10**62)

    def test_result_shape(self, result):
        assert isinstance(result, SeriesSolveResult)
        assert result.n_terms_used >= 50
        assert 3 < result.tail_base < 4  # just above the spectral radius
        assert result.tail_constant > 0


class TestValidation:
    def test_bad_power_rejected(self):
        with pytest.raises(ValueError):
            solve_dyndeg(GEOM_A, 0, GEOM_U, GEOM_V, TOL)

    def test_bad_tolerance_rejected(self):
        with pytest.raises(ValueError):
            solve_dyndeg(GEOM_A, 1, GEOM_U, GEOM_V, 0)

    def test_negative_stream_rejected(self):
        # U without the origin can push support values negative
        with pytest.raises(ValueError):
            solve_dyndeg(((2, 0), (0, 1)), 1, ((-1, 0),), ((1, 0),), TOL)
