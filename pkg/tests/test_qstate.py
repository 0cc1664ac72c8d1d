"""Schmidt analysis, reduced states, and Bell-type superpositions."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from bellbound import (
    CoherentFamily,
    DegeneracyError,
    PureState,
    ValidationError,
    bell_like_state,
    fock_state,
    fock_truncation,
    reconstruct,
    reduced_state,
    schmidt_decompose,
    schmidt_sum_squared,
)
from helpers import random_pure_state, random_unit_vector

BELL = PureState(np.array([[1, 0], [0, 1]]) / math.sqrt(2))
PRODUCT = PureState(np.array([[1, 0], [0, 0]], dtype=complex))


class TestPureState:
    def test_rejects_unnormalized(self):
        with pytest.raises(ValidationError, match="deviates from 1 by"):
            PureState(np.array([[1.0, 0.0], [0.0, 1.0]]))

    def test_rejects_non_matrix(self):
        with pytest.raises(ValidationError):
            PureState(np.array([1.0, 0.0]))

    def test_dims_and_vector(self):
        st = random_pure_state(np.random.default_rng(0), 3, 4)
        assert (st.d1, st.d2) == (3, 4)
        # row-major flattening matches the kron convention
        assert st.vector()[2 * 4 + 1] == st.amplitudes[2, 1]

    def test_amplitudes_read_only(self):
        with pytest.raises(ValueError):
            BELL.amplitudes[0, 0] = 0.0


class TestSchmidtDecompose:
    def test_bell_state(self):
        sd = schmidt_decompose(BELL)
        assert sd.rank == 2
        assert_allclose(sd.coefficients, [1 / math.sqrt(2)] * 2, atol=1e-15)

    def test_product_state(self):
        sd = schmidt_decompose(PRODUCT)
        assert sd.rank == 1
        assert_allclose(sd.coefficients, [1.0], atol=1e-15)

    def test_coherent_family_closed_form(self):
        # SVD of the truncated two-mode state must match the closed-form
        # eigenvalues lambda_pm = (1 ± x)^2 / (2 (1 + x^2)), x = e^{-2 a^2}.
        alpha = 0.5
        x = math.exp(-2 * alpha**2)
        lam = np.array([(1 + x) ** 2, (1 - x) ** 2]) / (2 * (1 + x * x))
        st = fock_state(CoherentFamily(1, alpha), fock_truncation(alpha))
        sd = schmidt_decompose(st)
        assert sd.rank == 2
        assert_allclose(sd.coefficients**2, lam, atol=1e-9)

    def test_descending_order_and_truncation(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            st = random_pure_state(rng, int(rng.integers(2, 5)), int(rng.integers(2, 5)))
            sd = schmidt_decompose(st)
            assert np.all(np.diff(sd.coefficients) <= 0)
            assert np.all(sd.coefficients > sd.truncation_tol)

    def test_reconstruction(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            st = random_pure_state(rng, int(rng.integers(2, 6)), int(rng.integers(2, 6)))
            sd = schmidt_decompose(st)
            assert np.max(np.abs(reconstruct(sd) - st.amplitudes)) < 1e-10

    def test_orthonormal_bases(self):
        rng = np.random.default_rng(13)
        st = random_pure_state(rng, 4, 3)
        sd = schmidt_decompose(st)
        for basis in (sd.left_basis, sd.right_basis):
            gram = basis @ basis.conj().T
            assert_allclose(gram, np.eye(sd.rank), atol=1e-12)

    def test_phase_convention_deterministic(self):
        rng = np.random.default_rng(17)
        st = random_pure_state(rng, 3, 3)
        a = schmidt_decompose(st)
        b = schmidt_decompose(PureState(st.amplitudes.copy()))
        assert_allclose(a.left_basis, b.left_basis, atol=0)
        for row in a.left_basis:
            pivot = row[np.flatnonzero(np.abs(row) > 1e-12)[0]]
            assert abs(pivot.imag) < 1e-14
            assert pivot.real > 0

    def test_truncation_drops_tiny_coefficients(self):
        eps = 1e-14
        big = math.sqrt(1 - eps**2)
        st = PureState(np.diag([big, eps]).astype(complex))
        sd = schmidt_decompose(st)
        assert sd.rank == 1
        # no renormalization of the kept coefficients
        assert sd.coefficients[0] == pytest.approx(big, abs=1e-15)

    def test_bad_tolerance(self):
        with pytest.raises(ValueError):
            schmidt_decompose(BELL, truncation_tol=1.5)


class TestReducedState:
    def test_bell_maximally_mixed(self):
        rho = reduced_state(BELL, 1)
        assert_allclose(rho.matrix, np.eye(2) / 2, atol=1e-15)

    def test_product_projector(self):
        rho = reduced_state(PRODUCT, 2)
        assert_allclose(rho.matrix, np.diag([1.0, 0.0]), atol=1e-15)

    def test_coherent_family4_balanced(self):
        st = fock_state(CoherentFamily(4, 1.0), fock_truncation(1.0))
        w = np.linalg.eigvalsh(reduced_state(st, 1).matrix)
        assert_allclose(np.sort(w)[-2:], [0.5, 0.5], atol=1e-10)

    def test_spectra_agree_across_sites(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            st = random_pure_state(rng, int(rng.integers(2, 5)), int(rng.integers(2, 5)))
            w1 = np.linalg.eigvalsh(reduced_state(st, 1).matrix)
            w2 = np.linalg.eigvalsh(reduced_state(st, 2).matrix)
            nz1 = np.sort(w1[w1 > 1e-10])[::-1]
            nz2 = np.sort(w2[w2 > 1e-10])[::-1]
            assert len(nz1) == len(nz2)
            assert_allclose(nz1, nz2, atol=1e-10)

    def test_bad_site(self):
        with pytest.raises(ValueError, match="site"):
            reduced_state(BELL, 3)


class TestSchmidtSumSquared:
    def test_known_value(self):
        st = PureState(np.diag([0.8, 0.6]).astype(complex))
        assert schmidt_sum_squared(schmidt_decompose(st)) == pytest.approx(1.96, abs=1e-12)

    def test_range_and_extremes(self):
        rng = np.random.default_rng(29)
        for _ in range(30):
            st = random_pure_state(rng, 3, 3)
            sd = schmidt_decompose(st)
            val = schmidt_sum_squared(sd)
            assert 1.0 - 1e-12 <= val <= sd.rank + 1e-12
        # equality with the rank iff maximally entangled
        maxent = PureState(np.eye(3, dtype=complex) / math.sqrt(3))
        assert schmidt_sum_squared(schmidt_decompose(maxent)) == pytest.approx(3, abs=1e-12)


class TestBellLikeState:
    def test_orthogonal_inputs_give_bell(self):
        v1 = np.array([1, 0], dtype=complex)
        v2 = np.array([0, 1], dtype=complex)
        st = bell_like_state(v1, v2, 0, 0)
        assert_allclose(st.amplitudes, BELL.amplitudes, atol=1e-15)

    def test_antisymmetric_overlapping(self):
        v1 = np.array([1, 0], dtype=complex)
        v2 = np.array([1, 1], dtype=complex) / math.sqrt(2)
        st = bell_like_state(v1, v2, 1, 1)
        sd = schmidt_decompose(st)
        assert_allclose(sd.coefficients, [1 / math.sqrt(2)] * 2, atol=1e-12)

    @pytest.mark.parametrize("j", [0, 1])
    @pytest.mark.parametrize("k", [0, 1])
    def test_always_rank_two(self, j, k):
        rng = np.random.default_rng(100 * j + k)
        for _ in range(10):
            d = int(rng.integers(2, 5))
            v1 = random_unit_vector(rng, d)
            v2 = random_unit_vector(rng, d)
            sd = schmidt_decompose(bell_like_state(v1, v2, j, k))
            assert sd.rank == 2

    def test_real_overlap_normalization_matches_closed_form(self):
        v1 = np.array([1.0, 0.0, 0.0], dtype=complex)
        v2 = np.array([0.6, 0.8, 0.0], dtype=complex)
        overlap = 0.6
        raw = np.outer(v1, v1) - np.outer(v2, v2)
        expected = raw / math.sqrt(2 * (1 - overlap**2))
        st = bell_like_state(v1, v2, 1, 0)
        assert_allclose(st.amplitudes, expected, atol=1e-12)

    def test_dependent_inputs_degenerate(self):
        v = np.array([1, 1], dtype=complex) / math.sqrt(2)
        with pytest.raises(DegeneracyError, match="Gram determinant"):
            bell_like_state(v, v * np.exp(0.3j), 0, 1)

    def test_unnormalized_input_rejected(self):
        with pytest.raises(ValidationError):
            bell_like_state(np.array([1, 1], dtype=complex), np.array([0, 1], dtype=complex), 0, 0)

    def test_bad_indices(self):
        v1 = np.array([1, 0], dtype=complex)
        v2 = np.array([0, 1], dtype=complex)
        with pytest.raises(ValueError):
            bell_like_state(v1, v2, 2, 0)
