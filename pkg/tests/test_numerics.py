"""Matrix/signal generation, thresholding, normalization, power iteration."""

import itertools

import numpy as np
import pytest

from onebit_cs import (DimensionError, ParameterError, SparseSignal,
                       gaussian_matrix, hard_threshold, prng_new,
                       random_sparse_unit_signal, spectral_norm, unit_normalize)


class TestGaussianMatrix:
    def test_deterministic(self):
        a = gaussian_matrix(2, 3, prng_new(7))
        b = gaussian_matrix(2, 3, prng_new(7))
        np.testing.assert_array_equal(a, b)

    def test_moments_large(self):
        m = gaussian_matrix(1000, 1000, prng_new(7))
        assert abs(m.mean()) < 0.01
        assert abs(m.var() - 1.0) < 0.02

    def test_minimal_shape(self):
        m = gaussian_matrix(1, 1, prng_new(7))
        assert m.shape == (1, 1) and np.isfinite(m[0, 0])

    @pytest.mark.parametrize("rows,cols", [(0, 3), (3, 0), (-1, 2)])
    def test_bad_dimensions(self, rows, cols):
        with pytest.raises(DimensionError):
            gaussian_matrix(rows, cols, prng_new(1))

    def test_row_major_fill(self):
        # the first row must be the first `cols` draws of the stream
        from onebit_cs.rng import gaussian
        m = gaussian_matrix(3, 4, prng_new(19))
        flat = gaussian(prng_new(19), 12)
        np.testing.assert_array_equal(m.ravel(), flat)


class TestRandomSparseSignal:
    def test_contract(self):
        sig = random_sparse_unit_signal(10, 3, prng_new(1))
        assert sig.sparsity == 3
        assert abs(np.linalg.norm(sig.values) - 1.0) <= 1e-12
        assert np.count_nonzero(sig.to_dense()) == 3

    def test_full_support(self):
        sig = random_sparse_unit_signal(5, 5, prng_new(1))
        assert sig.sparsity == 5
        assert abs(np.linalg.norm(sig.to_dense()) - 1.0) <= 1e-12

    @pytest.mark.parametrize("k", [0, 11])
    def test_bad_sparsity(self, k):
        with pytest.raises(ParameterError):
            random_sparse_unit_signal(10, k, prng_new(1))

    def test_support_frequencies_uniform(self):
        # binomial sd of a per-index frequency is ~0.001 at 1e4 draws, so
        # the 0.003 band is ~3 sigma; the seed is frozen to keep it stable
        s = prng_new(28)
        counts = np.zeros(1000)
        draws = 10000
        for _ in range(draws):
            counts[random_sparse_unit_signal(1000, 10, s).support] += 1
        freq = counts / draws
        assert np.max(np.abs(freq - 0.01)) < 0.003

    def test_value_rotation_symmetry(self):
        # two-sample KS between first and second support values
        s = prng_new(5)
        v1 = np.empty(10000)
        v2 = np.empty(10000)
        for i in range(10000):
            sig = random_sparse_unit_signal(10, 3, s)
            v1[i], v2[i] = sig.values[0], sig.values[1]
        a, b = np.sort(v1), np.sort(v2)
        grid = np.concatenate([a, b])
        ks = np.max(np.abs(np.searchsorted(a, grid, side="right") / a.size
                           - np.searchsorted(b, grid, side="right") / b.size))
        assert ks < 0.05


class TestHardThreshold:
    def test_direct_selection(self):
        np.testing.assert_array_equal(
            hard_threshold([3, -1, 0.5, -4], 2), [3, 0, 0, -4])

    def test_tie_break_lower_index(self):
        np.testing.assert_array_equal(hard_threshold([2, -2, 1], 1), [2, 0, 0])

    def test_zero_sparsity(self):
        np.testing.assert_array_equal(hard_threshold([1.0, 2.0], 0), [0, 0])

    def test_oversized_sparsity_is_noop(self):
        v = np.array([1.0, -2.0, 3.0])
        np.testing.assert_array_equal(hard_threshold(v, 5), v)

    def test_negative_sparsity(self):
        with pytest.raises(ParameterError):
            hard_threshold([1.0], -1)

    def test_global_best_k_term_by_enumeration(self):
        # brute force over all supports of size k for short vectors
        rng_stream = prng_new(33)
        from onebit_cs.rng import gaussian
        for n, k in [(6, 2), (8, 3), (10, 4)]:
            v = gaussian(rng_stream, n)
            ours = hard_threshold(v, k)
            best = np.inf
            for supp in itertools.combinations(range(n), k):
                u = np.zeros(n)
                u[list(supp)] = v[list(supp)]
                best = min(best, float(np.linalg.norm(v - u)))
            assert np.linalg.norm(v - ours) <= best + 1e-12
            assert np.count_nonzero(ours) <= k


class TestUnitNormalize:
    def test_three_four_five(self):
        vec, zero = unit_normalize([3.0, 4.0])
        assert not zero
        np.testing.assert_allclose(vec, [0.6, 0.8], rtol=0, atol=1e-15)

    def test_idempotent_on_unit(self):
        v = np.array([0.6, 0.8])
        vec, zero = unit_normalize(v)
        np.testing.assert_allclose(vec, v, atol=1e-15)
        assert not zero

    def test_zero_flag(self):
        vec, zero = unit_normalize([0.0, 0.0])
        assert zero
        np.testing.assert_array_equal(vec, [0.0, 0.0])

    def test_norm_within_tolerance(self):
        from onebit_cs.rng import gaussian
        s = prng_new(3)
        for _ in range(100):
            vec, zero = unit_normalize(gaussian(s, 13))
            assert not zero
            assert abs(np.linalg.norm(vec) - 1.0) <= 1e-12


class TestSpectralNorm:
    def test_identity(self):
        assert spectral_norm(np.eye(3), tol=1e-12) == pytest.approx(1.0, abs=1e-10)

    def test_diagonal(self):
        assert spectral_norm(np.diag([5.0, 1.0]), tol=1e-12) == pytest.approx(5.0, abs=1e-9)

    def test_matches_svd(self):
        m = gaussian_matrix(50, 100, prng_new(3))
        sigma = spectral_norm(m, tol=1e-13, max_iter=2000)
        top = np.linalg.svd(m, compute_uv=False)[0]
        assert abs(sigma - top) / top < 1e-6

    def test_zero_matrix(self):
        assert spectral_norm(np.zeros((4, 5))) == 0.0

    def test_bad_tol(self):
        with pytest.raises(ParameterError):
            spectral_norm(np.eye(2), tol=0.0)


class TestSparseSignalType:
    def test_round_trip(self):
        sig = SparseSignal(dim=6, support=[1, 4], values=[0.6, 0.8])
        dense = sig.to_dense()
        back = SparseSignal.from_dense(dense)
        np.testing.assert_array_equal(back.support, [1, 4])
        np.testing.assert_array_equal(back.values, [0.6, 0.8])

    def test_rejects_non_unit(self):
        with pytest.raises(ParameterError):
            SparseSignal(dim=3, support=[0], values=[0.5])

    def test_rejects_unsorted_support(self):
        with pytest.raises(ParameterError):
            SparseSignal(dim=5, support=[3, 1], values=[0.6, 0.8])

    def test_rejects_out_of_range_support(self):
        with pytest.raises(ParameterError):
            SparseSignal(dim=3, support=[0, 3], values=[0.6, 0.8])
