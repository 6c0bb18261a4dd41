"""Brute-force oracles: orthant sampling and the grid decoder."""

import numpy as np
import pytest

from onebit_cs import (GridSpec, ParameterError, TractabilityError,
                       angular_distance, brute_force_decoder,
                       consistent_grid_points, gaussian_matrix,
                       hamming_distance, orthant_bound_tight, prng_new,
                       random_sparse_unit_signal, sampled_orthant_count,
                       sign_map)
from onebit_cs.rng import derive, gaussian


class TestSampledOrthantCount:
    def test_single_column_two_orthants(self):
        for m in (2, 5, 8):
            basis = gaussian(prng_new(m), m).reshape(m, 1)
            assert sampled_orthant_count(basis, 10000, prng_new(1)) == 2

    def test_plane_in_r3_at_most_six(self):
        basis = gaussian_matrix(3, 2, prng_new(7))
        count = sampled_orthant_count(basis, 100000, prng_new(8))
        assert count <= 6

    def test_never_exceeds_tight_bound(self):
        t = prng_new(42)
        for i in range(40):
            m = 2 + (i % 7)  # dimensions 2..8
            k = 1 + (i % min(3, m))
            basis = gaussian_matrix(m, k, derive(t, i))
            count = sampled_orthant_count(basis, 3000, derive(t, 1000 + i))
            assert count <= orthant_bound_tight(m, k)

    def test_monotone_in_samples_prefix(self):
        basis = gaussian_matrix(6, 2, prng_new(3))
        low = sampled_orthant_count(basis, 50, prng_new(4))
        high = sampled_orthant_count(basis, 5000, prng_new(4))
        assert low <= high

    def test_rank_deficient_rejected(self):
        basis = np.ones((4, 2))
        with pytest.raises(ParameterError):
            sampled_orthant_count(basis, 100, prng_new(1))


class TestBruteForceDecoder:
    def test_recovers_one_sparse_pole(self):
        t = prng_new(11)
        phi = gaussian_matrix(100, 6, derive(t, 0))
        x = np.zeros(6)
        x[0] = 1.0
        y = sign_map(phi, x)
        est, found = brute_force_decoder(y, phi, 1, GridSpec())
        assert found
        np.testing.assert_array_equal(est, x)

    def test_negative_pole(self):
        t = prng_new(12)
        phi = gaussian_matrix(100, 6, derive(t, 0))
        x = np.zeros(6)
        x[3] = -1.0
        y = sign_map(phi, x)
        est, found = brute_force_decoder(y, phi, 1, GridSpec())
        assert found
        np.testing.assert_array_equal(est, x)

    def test_inconsistent_case_minimizes_hamming(self):
        # dense signal: no 1-sparse candidate is consistent
        t = prng_new(13)
        phi = gaussian_matrix(60, 6, derive(t, 0))
        xd = gaussian(derive(t, 1), 6)
        y = sign_map(phi, xd)
        est, found = brute_force_decoder(y, phi, 1, GridSpec())
        assert not found
        returned_dh = hamming_distance(sign_map(phi, est), y)
        best = min(hamming_distance(sign_map(phi, cand), y)
                   for j in range(6) for s in (1.0, -1.0)
                   for cand in [np.eye(6)[j] * s])
        assert returned_dh == best

    def test_two_sparse_grid_decoding(self):
        t = prng_new(14)
        phi = gaussian_matrix(200, 8, derive(t, 0))
        x = random_sparse_unit_signal(8, 2, derive(t, 1)).to_dense()
        y = sign_map(phi, x)
        est, found = brute_force_decoder(y, phi, 2, GridSpec(points_per_dimension=256))
        assert found
        assert angular_distance(x, est) < 0.05

    def test_tractability_guards(self):
        phi = np.zeros((4, 13))
        y = np.ones(4, dtype=np.int8)
        with pytest.raises(TractabilityError):
            brute_force_decoder(y, phi, 1, GridSpec())
        with pytest.raises(TractabilityError):
            brute_force_decoder(y, np.zeros((4, 6)), 3, GridSpec())

    def test_partial_search_rejected(self):
        with pytest.raises(ParameterError):
            brute_force_decoder(np.ones(4, dtype=np.int8), np.zeros((4, 3)), 1,
                                GridSpec(supports_enumerated=False))

    def test_grid_spec_validation(self):
        with pytest.raises(ParameterError):
            GridSpec(points_per_dimension=1)

    def test_consistent_cell_shrinks_with_m(self):
        # the consistent-cell error drops as M grows; at K=2 the signal
        # sits off the angular grid so the effect is visible
        errs = {}
        for m in (50, 400):
            per_trial = []
            for i in range(50):
                t = derive(prng_new(900 + i), m)
                phi = gaussian_matrix(m, 8, derive(t, 0))
                x = random_sparse_unit_signal(8, 2, derive(t, 1)).to_dense()
                y = sign_map(phi, x)
                est, found = brute_force_decoder(y, phi, 2,
                                                 GridSpec(points_per_dimension=512))
                if found:
                    per_trial.append(angular_distance(x, est))
            errs[m] = np.median(per_trial)
        assert errs[400] < errs[50]

    def test_one_sparse_signal_always_in_cell(self):
        # K = 1 sanity: a 1-sparse unit signal is itself a grid atom, so the
        # oracle recovers it exactly at any oversampling
        for i, m in enumerate((50, 400)):
            t = prng_new(300 + i)
            phi = gaussian_matrix(m, 8, derive(t, 0))
            x = random_sparse_unit_signal(8, 1, derive(t, 1)).to_dense()
            y = sign_map(phi, x)
            est, found = brute_force_decoder(y, phi, 1, GridSpec())
            assert found
            assert angular_distance(x, est) == 0.0


class TestConsistentGridPoints:
    def test_matches_decoder_when_consistent(self):
        t = prng_new(15)
        phi = gaussian_matrix(120, 6, derive(t, 0))
        x = np.zeros(6)
        x[2] = 1.0
        y = sign_map(phi, x)
        cell = consistent_grid_points(y, phi, 1, GridSpec())
        est, found = brute_force_decoder(y, phi, 1, GridSpec())
        assert found
        assert any(np.array_equal(c, est) for c in cell)
        for c in cell:
            np.testing.assert_array_equal(sign_map(phi, c), y)
