"""Experiment configs, runners, stream derivation, and CSV emission."""

import csv

import numpy as np
import pytest

from onebit_cs import ONE_SIDED_L1, ParameterError
from onebit_cs.harness import (CSV_COLUMNS, ExperimentConfig, TrialRecord,
                               emit_csv, run_experiment, run_trial,
                               run_concentration_check, run_error_decay,
                               run_noise_flip_sweep, run_noise_sigma_check)


def small_config(**overrides):
    base = dict(experiment="ErrorDecay", N=40, K=3, trials=3, base_seed=77,
                m_grid=[30, 60], variants=["l1"])
    base.update(overrides)
    return ExperimentConfig.from_dict(base)


class TestConfigValidation:
    def test_unknown_key_rejected(self):
        with pytest.raises(ParameterError, match="unknown config"):
            ExperimentConfig.from_dict(dict(experiment="ErrorDecay", N=10, K=2,
                                            trials=1, base_seed=0, m_grid=[5],
                                            variants=["l1"], typo_key=1))

    def test_both_grids_rejected(self):
        with pytest.raises(ParameterError):
            small_config(m_over_n_grid=[0.5])

    def test_missing_grid_rejected(self):
        with pytest.raises(ParameterError):
            ExperimentConfig.from_dict(dict(experiment="ErrorDecay", N=10, K=2,
                                            trials=1, base_seed=0, variants=["l1"]))

    def test_flip_fraction_range(self):
        with pytest.raises(ParameterError):
            ExperimentConfig.from_dict(dict(
                experiment="NoiseFlipSweep", N=10, K=2, trials=1, base_seed=0,
                m_grid=[10], variants=["l1"], flip_fractions=[0.6]))

    def test_inapplicable_keys_rejected(self):
        with pytest.raises(ParameterError):
            small_config(flip_fractions=[0.01])
        with pytest.raises(ParameterError):
            small_config(sigmas=[0.5])
        with pytest.raises(ParameterError):
            ExperimentConfig.from_dict(dict(
                experiment="ConcentrationCheck", N=10, K=2, trials=1,
                base_seed=0, m_grid=[10], variants=["l1"]))

    def test_unknown_variant_rejected(self):
        with pytest.raises(ParameterError):
            small_config(variants=["l7"])

    def test_unknown_biht_key_rejected(self):
        with pytest.raises(ParameterError):
            small_config(biht={"learning_rate": 0.1})

    def test_m_over_n_conversion_rounds_half_up(self):
        cfg = small_config(m_grid=None, m_over_n_grid=[0.5, 1.0125])
        assert cfg.m_values() == [20, 41]  # 40 * 1.0125 = 40.5 -> 41


class TestRunners:
    def test_run_trial_deterministic(self):
        a = run_trial(50, 30, 3, ONE_SIDED_L1, seed=123)
        b = run_trial(50, 30, 3, ONE_SIDED_L1, seed=123)
        assert a == b

    def test_error_decay_row_count_and_order(self):
        cfg = small_config()
        records = run_error_decay(cfg)
        assert len(records) == 2 * 3
        ms = [r.M for r in records]
        assert ms == [30, 30, 30, 60, 60, 60]  # grid-major, then trial
        for r in records:
            assert r.experiment == "ErrorDecay"
            assert 0.0 <= r.angular_error <= 1.0

    def test_empty_grid_empty_table(self):
        cfg = small_config(m_grid=[])
        assert run_error_decay(cfg) == []

    def test_trial_rows_independent_of_execution_order(self):
        # a single record recomputed standalone equals the full-suite row
        cfg = small_config()
        records = run_experiment(cfg)
        again = run_experiment(cfg)
        assert records == again

    def test_consistent_implies_zero_hamming(self):
        cfg = small_config(m_grid=[120])
        for r in run_error_decay(cfg):
            if r.consistent:
                assert r.hamming_error == 0.0

    def test_flip_sweep_counts_exact(self):
        cfg = ExperimentConfig.from_dict(dict(
            experiment="NoiseFlipSweep", N=30, K=2, trials=2, base_seed=5,
            m_grid=[50], variants=["l1", "l2"], flip_fractions=[0.0, 0.05]))
        records = run_noise_flip_sweep(cfg)
        assert len(records) == 2 * 2 * 2  # fractions x trials x variants
        for r in records:
            expected = int(np.floor(r.M * (0.05 if r.flips_applied else 0.0) + 0.5))
            assert r.flips_applied in (0, 3)  # round-half-up(50 * 0.05) = 3
            if r.flips_applied:
                assert r.flips_applied == expected

    def test_flip_sweep_variants_share_trial_data(self):
        cfg = ExperimentConfig.from_dict(dict(
            experiment="NoiseFlipSweep", N=30, K=2, trials=1, base_seed=5,
            m_grid=[50], variants=["l1", "l2"], flip_fractions=[0.02]))
        r1, r2 = run_noise_flip_sweep(cfg)
        assert r1.seed == r2.seed
        assert (r1.variant, r2.variant) == ("l1", "l2")

    def test_concentration_single_bit(self):
        cfg = ExperimentConfig.from_dict(dict(
            experiment="ConcentrationCheck", N=10, K=2, trials=8, base_seed=3,
            m_grid=[1]))
        for r in run_concentration_check(cfg):
            assert r.hamming_error in (0.0, 1.0)
            assert r.angular_error == pytest.approx(r.angular_error)

    def test_noise_sigma_zero_never_flips(self):
        cfg = ExperimentConfig.from_dict(dict(
            experiment="NoiseSigmaCheck", N=10, K=2, trials=4, base_seed=3,
            m_grid=[200], sigmas=[0.0, 0.5]))
        records = run_noise_sigma_check(cfg)
        for r in records:
            if r.sigma == 0.0:
                assert r.hamming_error == 0.0 and r.flips_applied == 0
            assert r.flips_applied == int(round(r.hamming_error * r.M))

    def test_noise_flip_rate_non_decreasing_in_sigma(self):
        cfg = ExperimentConfig.from_dict(dict(
            experiment="NoiseSigmaCheck", N=10, K=2, trials=20, base_seed=6,
            m_grid=[2000], sigmas=[0.1, 0.5, 1.0, 2.0]))
        records = run_noise_sigma_check(cfg)
        means = [np.mean([r.hamming_error for r in records if r.sigma == s])
                 for s in (0.1, 0.5, 1.0, 2.0)]
        assert all(a < b for a, b in zip(means, means[1:]))

    def test_hinge_variant_with_kappa_override(self):
        cfg = ExperimentConfig.from_dict(dict(
            experiment="ErrorDecay", N=30, K=2, trials=2, base_seed=9,
            m_grid=[90], variants=["hinge"], biht={"kappa": 0.5}))
        records = run_experiment(cfg)
        assert len(records) == 2
        for r in records:
            assert r.variant == "hinge"
            assert 0.0 <= r.angular_error <= 0.5


class TestEmitCsv:
    def test_header_only_for_empty(self, tmp_path):
        path = tmp_path / "empty.csv"
        emit_csv([], path)
        assert path.read_text() == ",".join(CSV_COLUMNS) + "\n"

    def test_round_trip_within_print_precision(self, tmp_path):
        cfg = small_config(trials=2)
        records = run_error_decay(cfg)
        path = tmp_path / "table.csv"
        emit_csv(records, path)
        with open(path) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == len(records)
        assert list(rows[0].keys()) == list(CSV_COLUMNS)
        for rec, row in zip(records, rows):
            assert int(row["M"]) == rec.M
            assert int(row["seed"]) == rec.seed
            assert float(row["angular_error"]) == pytest.approx(
                rec.angular_error, rel=1e-8)
            assert float(row["snr_db"]) == pytest.approx(rec.snr_db, rel=1e-8)

    def test_byte_identical_across_runs(self, tmp_path):
        cfg = small_config()
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(run_experiment(cfg), p1)
        emit_csv(run_experiment(cfg), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_record_invariants_enforced(self):
        rec = TrialRecord(experiment="ErrorDecay", variant="l1", M=10, N=10,
                          K=2, trial_index=0, seed=1, angular_error=0.1,
                          hamming_error=0.1, snr_db=10.0, iterations=5,
                          consistent=1, flips_applied=0, sigma=0.0)
        with pytest.raises(ParameterError):
            rec.validate()  # consistent with nonzero hamming
