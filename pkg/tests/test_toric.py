"""Canonical lattice data: point sets, wall normals, support function,
involution component structure, lattice measures."""

import json
from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, strategies as st

import frozen
from transdeg.errors import DimensionTooSmall
from transdeg.toric import (
    InvolutionData,
    LatticeMeasure,
    SupportData,
    b_matrix,
    b_matrix_inverse,
    canonical_sets,
    involution_components,
    involution_factor_indices,
    measure_from_set,
    psi,
    support_function,
)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


class TestCanonicalSets:
    def test_frozen_point_sets(self):
        data = canonical_sets(3)
        assert data.P_set == frozen.P_SET
        assert data.U_set == frozen.U_SET
        assert data.V_set == frozen.V_SET

    def test_frozen_wall_normals(self):
        data = canonical_sets(3)
        assert set(data.wall_normals) == set(frozen.WALL_NORMALS)
        assert len(data.wall_normals) == 6

    def test_dimension_too_small(self):
        for d in (0, 1, 2):
            with pytest.raises(DimensionTooSmall):
                canonical_sets(d)
            with pytest.raises(DimensionTooSmall):
                involution_components(d)

    def test_difference_set_d3(self):
        data = canonical_sets(3)
        assert len(data.D_set) == 12
        e = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        expected = set()
        for v in e:
            expected.add(v)
            expected.add(tuple(-x for x in v))
        for a in e:
            for b in e:
                if a != b:
                    expected.add(tuple(x - y for x, y in zip(a, b)))
        assert set(data.D_set) == expected
        assert (0, 0, 0) not in data.D_set

    @pytest.mark.parametrize("d", range(3, 9))
    def test_invariants(self, d):
        data = canonical_sets(d)
        assert data.dim == d
        assert len(data.P_set) == d + 1
        assert len(data.U_set) == d + 1
        assert len(data.V_set) == d + 1
        assert len(data.wall_normals) == d * (d + 1) // 2

        # V balances
        total = [0] * d
        for v in data.V_set:
            for i, x in enumerate(v):
                total[i] += x
        assert not any(total)

        for n in data.wall_normals:
            g = 0
            for x in n:
                g = gcd(g, x)
            assert g == 1, f"non-primitive normal {n}"
            first = next(x for x in n if x != 0)
            assert first > 0, f"normal {n} not canonicalized"
            annihilated = sum(1 for p in data.P_set if dot(n, p) == 0)
            assert annihilated == d - 1

        # wall normals pairwise distinct even up to sign
        as_set = set(data.wall_normals)
        for n in data.wall_normals:
            assert tuple(-x for x in n) not in as_set

    @pytest.mark.parametrize("d", range(3, 9))
    def test_v_set_matches_component_bookkeeping(self, d):
        """The j-th V vector must equal the order vector of b_j in g_k/g_0,
        recomputed here straight from the published factor index sets."""
        data = canonical_sets(d)
        factors = involution_factor_indices(d)
        for j in range(d + 1):
            expected = tuple(
                int(j in factors[k]) - int(j in factors[0])
                for k in range(1, d + 1)
            )
            assert data.V_set[j] == expected

    def test_as_dict_serializes(self):
        data = canonical_sets(4)
        blob = json.dumps(data.as_dict())
        back = json.loads(blob)
        assert back["dim"] == 4
        assert len(back["wall_normals"]) == 10


class TestSupportFunction:
    def test_examples(self):
        U = canonical_sets(3).U_set
        assert support_function((-1, -1, -1), U) == 1
        assert support_function((1, 0, 0), U) == 0
        assert support_function((0, 0, 0), U) == 0

    def test_empty_weight_set(self):
        with pytest.raises(ValueError):
            support_function((1, 2), ())

    def test_psi_closed_form_agrees(self):
        U = canonical_sets(3).U_set
        rng = range(-3, 4)
        for v in product(rng, rng, rng):
            assert support_function(v, U) == psi(v)

    def test_psi_zero_iff_nonnegative_orthant(self):
        rng = range(-3, 4)
        for v in product(rng, rng, rng):
            value = psi(v)
            assert value >= 0
            if all(x >= 0 for x in v):
                assert value == 0
            else:
                assert value > 0

    @given(
        st.lists(st.integers(-10**6, 10**6), min_size=3, max_size=3),
        st.lists(st.integers(-10**6, 10**6), min_size=3, max_size=3),
    )
    def test_psi_subadditive(self, v, w):
        s = [a + b for a, b in zip(v, w)]
        assert psi(s) <= psi(v) + psi(w)

    @given(
        st.lists(st.integers(-10**6, 10**6), min_size=3, max_size=3),
        st.integers(0, 50),
    )
    def test_psi_positively_homogeneous(self, v, n):
        assert psi([n * x for x in v]) == n * psi(v)


class TestInvolution:
    def test_frozen_b_matrix(self):
        assert b_matrix(3) == frozen.B_MATRIX

    @pytest.mark.parametrize("d", range(3, 9))
    def test_b_inverse_is_exact_inverse(self, d):
        B = b_matrix(d)
        Binv = b_matrix_inverse(d)
        n = d + 1
        for i in range(n):
            for j in range(n):
                entry = sum(Fraction(B[i][k]) * Binv[k][j] for k in range(n))
                assert entry == (1 if i == j else 0)

    @pytest.mark.parametrize("d", range(3, 9))
    def test_b_inverse_entries(self, d):
        allowed = {Fraction(0), Fraction(1, 2), Fraction(-1, 2)}
        for row in b_matrix_inverse(d):
            for e in row:
                assert e in allowed

    def test_factor_indices_d3(self):
        # g = [x0*b2*b3, x1*b0*b3, x2*b0*b1, x3*b1*b2]
        assert involution_factor_indices(3) == ((2, 3), (0, 3), (0, 1), (1, 2))

    @pytest.mark.parametrize("d", range(3, 9))
    def test_component_structure(self, d):
        inv = involution_components(d)
        assert isinstance(inv, InvolutionData)
        assert inv.component_degree == d
        assert len(inv.factor_indices) == d + 1
        for factors in inv.factor_indices:
            # degree = 1 (the coordinate) + number of linear factors
            assert len(factors) == d - 1
        # each form b_i divides exactly d-1 of the d+1 components
        for i in range(d + 1):
            count = sum(1 for factors in inv.factor_indices if i in factors)
            assert count == d - 1


class TestLatticeMeasure:
    def test_positive_integer_weights_enforced(self):
        for bad in (0, -1, 1.5, Fraction(1, 2), True):
            with pytest.raises(ValueError):
                LatticeMeasure({(1, 0): bad})

    def test_mixed_dimensions_rejected(self):
        with pytest.raises(ValueError):
            LatticeMeasure({(1, 0): 1, (1, 0, 0): 2})

    def test_balanced_flag_is_checked(self):
        data = canonical_sets(3)
        mu_v = measure_from_set(data.V_set, balanced=True)
        assert mu_v.mass() == 4
        assert mu_v.moment() == (0, 0, 0)
        # P happens to balance as well
        measure_from_set(data.P_set, balanced=True)
        # U does not: sum = (-1,-1,-1)
        with pytest.raises(ValueError):
            measure_from_set(data.U_set, balanced=True)

    def test_unbalanced_without_flag_is_fine(self):
        mu = measure_from_set(canonical_sets(3).U_set)
        assert mu.moment() == (-1, -1, -1)
        assert mu.mass() == 4

    def test_equality_and_hash(self):
        a = LatticeMeasure({(1, 2): 3, (0, 0): 1})
        b = LatticeMeasure({(0, 0): 1, (1, 2): 3})
        assert a == b
        assert hash(a) == hash(b)
        assert a != LatticeMeasure({(1, 2): 3})

    def test_empty_measure(self):
        mu = LatticeMeasure({})
        assert mu.mass() == 0
        assert mu.moment() == ()
