"""Monte-Carlo experiment runner.

Five experiments, each driven by one strict-schema JSON config and
emitting rows of a fixed CSV schema:

* ErrorDecay          angular error / SNR of BIHT along an M grid
* ConsistencyScatter  (hamming, angular) pairs per trial along an M grid
* NoiseFlipSweep      reconstruction after flipping a fraction of signs
* ConcentrationCheck  d_H(A(x), A(s)) of a fixed pair vs d_S(x, s)
* NoiseSigmaCheck     flip fraction of pre-quantization Gaussian noise

Streams are derived as (base_seed, experiment_id, grid_index,
trial_index); the records of a trial depend only on that trial's stream,
so execution order never changes the CSV.  Within one trial every
requested variant reconstructs from the same drawn data.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, fields as dc_fields

from .errors import ParameterError
from .measurement import (angular_distance, flip_signs, hamming_distance,
                          noisy_sign_map, reconstruction_snr, sign_map)
from .numerics import gaussian_matrix, random_sparse_unit_signal, unit_normalize
from .recon import BihtConfig, ObjectiveVariant, biht, variant_from_name
from .rng import PrngStream, derive, gaussian, prng_new

EXPERIMENT_IDS = {
    "ErrorDecay": 0,
    "ConsistencyScatter": 1,
    "NoiseFlipSweep": 2,
    "ConcentrationCheck": 3,
    "NoiseSigmaCheck": 4,
}

# sub-stream channels within one trial
_CH_MATRIX, _CH_SIGNAL, _CH_NOISE, _CH_FLIPS = 0, 1, 2, 3
# channel of the experiment stream reserved for the fixed pair of the
# concentration check; grid indices stay far below it
_CH_FIXED_PAIR = 0x7FFFFFFF

CSV_COLUMNS = ("experiment", "variant", "M", "N", "K", "trial_index", "seed",
               "angular_error", "hamming_error", "snr_db", "iterations",
               "consistent", "flips_applied", "sigma")

_RECON_EXPERIMENTS = ("ErrorDecay", "ConsistencyScatter", "NoiseFlipSweep")


@dataclass
class TrialRecord:
    experiment: str
    variant: str
    M: int
    N: int
    K: int
    trial_index: int
    seed: int
    angular_error: float
    hamming_error: float
    snr_db: float
    iterations: int
    consistent: int
    flips_applied: int
    sigma: float

    def validate(self) -> "TrialRecord":
        if not 0.0 <= self.angular_error <= 1.0:
            raise ParameterError(f"angular_error out of [0,1]: {self.angular_error}")
        if not 0.0 <= self.hamming_error <= 1.0:
            raise ParameterError(f"hamming_error out of [0,1]: {self.hamming_error}")
        if self.consistent not in (0, 1):
            raise ParameterError(f"consistent must be 0/1, got {self.consistent}")
        if self.consistent == 1 and self.hamming_error != 0.0:
            raise ParameterError("consistent record with nonzero hamming_error")
        return self


@dataclass
class ExperimentConfig:
    experiment: str
    N: int
    K: int
    trials: int
    base_seed: int
    m_grid: list[int] | None = None
    m_over_n_grid: list[float] | None = None
    variants: list[str] = field(default_factory=list)
    flip_fractions: list[float] = field(default_factory=list)
    sigmas: list[float] = field(default_factory=list)
    biht: dict = field(default_factory=dict)

    _BIHT_KEYS = ("tau", "max_iter", "sphere_projection", "halt_on_consistency",
                  "kappa")

    def __post_init__(self):
        if self.experiment not in EXPERIMENT_IDS:
            valid = ", ".join(EXPERIMENT_IDS)
            raise ParameterError(f"unknown experiment {self.experiment!r} "
                                 f"(expected one of {valid})")
        if self.N < 1 or not 1 <= self.K <= self.N:
            raise ParameterError(f"need N >= 1 and 1 <= K <= N, got N={self.N}, K={self.K}")
        if self.trials < 1:
            raise ParameterError(f"trials must be >= 1, got {self.trials}")
        if (self.m_grid is None) == (self.m_over_n_grid is None):
            raise ParameterError("exactly one of m_grid / m_over_n_grid is required")
        if self.m_grid is not None and any(m < 1 for m in self.m_grid):
            raise ParameterError("m_grid values must be positive")
        if self.m_over_n_grid is not None and any(r <= 0 for r in self.m_over_n_grid):
            raise ParameterError("m_over_n_grid values must be positive")
        recon = self.experiment in _RECON_EXPERIMENTS
        if recon and not self.variants:
            raise ParameterError(f"{self.experiment} requires a non-empty variants list")
        if not recon and self.variants:
            raise ParameterError(f"{self.experiment} does not take variants")
        if self.experiment == "NoiseFlipSweep":
            if not self.flip_fractions:
                raise ParameterError("NoiseFlipSweep requires flip_fractions")
            if any(not 0.0 <= f <= 0.5 for f in self.flip_fractions):
                raise ParameterError("flip fractions must lie in [0, 0.5]")
        elif self.flip_fractions:
            raise ParameterError(f"{self.experiment} does not take flip_fractions")
        if self.experiment == "NoiseSigmaCheck":
            if not self.sigmas:
                raise ParameterError("NoiseSigmaCheck requires sigmas")
            if any(s < 0 for s in self.sigmas):
                raise ParameterError("sigmas must be non-negative")
        elif self.sigmas:
            raise ParameterError(f"{self.experiment} does not take sigmas")
        unknown = set(self.biht) - set(self._BIHT_KEYS)
        if unknown:
            raise ParameterError(f"unknown biht override keys: {sorted(unknown)}")
        for name in self.variants:
            self._variant(name)  # validates the names (and kappa, for hinge)

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {f.name for f in dc_fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ParameterError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParameterError(f"{path}: invalid JSON ({exc})")
        if not isinstance(doc, dict):
            raise ParameterError(f"{path}: config must be a JSON object")
        return cls.from_dict(doc)

    def m_values(self) -> list[int]:
        if self.m_grid is not None:
            return [int(m) for m in self.m_grid]
        return [_round_half_up(r * self.N) for r in self.m_over_n_grid]

    def _variant(self, name: str) -> ObjectiveVariant:
        return variant_from_name(name, kappa=float(self.biht.get("kappa", 1.0)))

    def variant_objs(self) -> list[ObjectiveVariant]:
        return [self._variant(name) for name in self.variants]

    def biht_config(self, variant: ObjectiveVariant) -> BihtConfig:
        return BihtConfig(
            variant=variant,
            tau=self.biht.get("tau"),
            max_iter=int(self.biht.get("max_iter", 100)),
            sphere_projection=bool(self.biht.get("sphere_projection", False)),
            halt_on_consistency=bool(self.biht.get("halt_on_consistency", True)),
        )


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def _experiment_stream(config: ExperimentConfig) -> PrngStream:
    return derive(prng_new(config.base_seed), EXPERIMENT_IDS[config.experiment])


def _trial_stream(config: ExperimentConfig, grid_index: int, trial: int) -> PrngStream:
    return derive(derive(_experiment_stream(config), grid_index), trial)


def _recon_record(config, experiment, variant, m, trial_index, seed, x_dense,
                  y_target, phi, flips, sigma) -> TrialRecord:
    res = biht(y_target, phi, config.K, config.biht_config(variant))
    est = res.estimate.to_dense()
    return TrialRecord(
        experiment=experiment,
        variant=variant.name,
        M=m, N=config.N, K=config.K,
        trial_index=trial_index,
        seed=seed,
        angular_error=angular_distance(x_dense, est),
        hamming_error=res.final_hamming,
        snr_db=reconstruction_snr(x_dense, est),
        iterations=res.iterations_run,
        consistent=int(res.consistent),
        flips_applied=flips,
        sigma=sigma,
    ).validate()


def run_trial(M: int, N: int, K: int, variant: ObjectiveVariant, seed: int,
              config: ExperimentConfig | None = None) -> TrialRecord:
    """One noiseless draw-measure-reconstruct trial from an integer seed.

    Fresh Φ and fresh x come from sub-streams of the trial stream; the
    record is a pure function of (M, N, K, variant, seed).
    """
    if config is None:
        config = ExperimentConfig(experiment="ErrorDecay", N=N, K=K, trials=1,
                                  base_seed=0, m_grid=[M], variants=[variant.name])
    trial = prng_new(seed)
    phi = gaussian_matrix(M, N, derive(trial, _CH_MATRIX))
    x = random_sparse_unit_signal(N, K, derive(trial, _CH_SIGNAL))
    x_dense = x.to_dense()
    y = sign_map(phi, x_dense)
    return _recon_record(config, config.experiment, variant, M, 0, seed,
                         x_dense, y, phi, flips=0, sigma=0.0)


def _run_noiseless_sweep(config: ExperimentConfig, experiment: str) -> list[TrialRecord]:
    records = []
    variants = config.variant_objs()
    for gi, m in enumerate(config.m_values()):
        for t in range(config.trials):
            trial = _trial_stream(config, gi, t)
            phi = gaussian_matrix(m, config.N, derive(trial, _CH_MATRIX))
            x = random_sparse_unit_signal(config.N, config.K, derive(trial, _CH_SIGNAL))
            x_dense = x.to_dense()
            y = sign_map(phi, x_dense)
            for variant in variants:
                records.append(_recon_record(
                    config, experiment, variant, m, t, trial.key,
                    x_dense, y, phi, flips=0, sigma=0.0))
    return records


def run_error_decay(config: ExperimentConfig) -> list[TrialRecord]:
    return _run_noiseless_sweep(config, "ErrorDecay")


def run_consistency_scatter(config: ExperimentConfig) -> list[TrialRecord]:
    return _run_noiseless_sweep(config, "ConsistencyScatter")


def run_noise_flip_sweep(config: ExperimentConfig) -> list[TrialRecord]:
    """Flip round-half-up(f*M) signs post-quantization, then reconstruct
    with every variant from the corrupted measurements.

    hamming_error is measured against the decoder's own (noisy) target;
    angular_error and snr_db are measured against the clean signal.
    """
    records = []
    variants = config.variant_objs()
    grid = [(m, f) for m in config.m_values() for f in config.flip_fractions]
    for gi, (m, f) in enumerate(grid):
        count = _round_half_up(f * m)
        for t in range(config.trials):
            trial = _trial_stream(config, gi, t)
            phi = gaussian_matrix(m, config.N, derive(trial, _CH_MATRIX))
            x = random_sparse_unit_signal(config.N, config.K, derive(trial, _CH_SIGNAL))
            x_dense = x.to_dense()
            y = sign_map(phi, x_dense)
            y_noisy = flip_signs(y, count, derive(trial, _CH_FLIPS))
            for variant in variants:
                records.append(_recon_record(
                    config, "NoiseFlipSweep", variant, m, t, trial.key,
                    x_dense, y_noisy, phi, flips=count, sigma=0.0))
    return records


def run_concentration_check(config: ExperimentConfig) -> list[TrialRecord]:
    """Per-matrix d_H(A(x), A(s)) for one fixed unit pair (x, s) drawn
    from the config seed; angular_error carries the constant d_S(x, s)."""
    records = []
    pair_stream = derive(_experiment_stream(config), _CH_FIXED_PAIR)
    x, _ = unit_normalize(gaussian(pair_stream, config.N))
    s, _ = unit_normalize(gaussian(pair_stream, config.N))
    d_s = angular_distance(x, s)
    for gi, m in enumerate(config.m_values()):
        for t in range(config.trials):
            trial = _trial_stream(config, gi, t)
            phi = gaussian_matrix(m, config.N, derive(trial, _CH_MATRIX))
            d_h = hamming_distance(sign_map(phi, x), sign_map(phi, s))
            records.append(TrialRecord(
                experiment="ConcentrationCheck", variant="none",
                M=m, N=config.N, K=config.K,
                trial_index=t, seed=trial.key,
                angular_error=d_s, hamming_error=d_h,
                snr_db=0.0, iterations=0, consistent=0,
                flips_applied=0, sigma=0.0,
            ).validate())
    return records


def run_noise_sigma_check(config: ExperimentConfig) -> list[TrialRecord]:
    """Empirical flip fraction between noisy and clean sign maps per sigma."""
    records = []
    grid = [(m, s) for m in config.m_values() for s in config.sigmas]
    for gi, (m, sigma) in enumerate(grid):
        for t in range(config.trials):
            trial = _trial_stream(config, gi, t)
            phi = gaussian_matrix(m, config.N, derive(trial, _CH_MATRIX))
            x = random_sparse_unit_signal(config.N, config.K, derive(trial, _CH_SIGNAL))
            x_dense = x.to_dense()
            y = sign_map(phi, x_dense)
            y_noisy = noisy_sign_map(phi, x_dense, sigma, derive(trial, _CH_NOISE))
            d_h = hamming_distance(y, y_noisy)
            records.append(TrialRecord(
                experiment="NoiseSigmaCheck", variant="none",
                M=m, N=config.N, K=config.K,
                trial_index=t, seed=trial.key,
                angular_error=0.0, hamming_error=d_h,
                snr_db=0.0, iterations=0, consistent=0,
                flips_applied=int(round(d_h * m)), sigma=sigma,
            ).validate())
    return records


_RUNNERS = {
    "ErrorDecay": run_error_decay,
    "ConsistencyScatter": run_consistency_scatter,
    "NoiseFlipSweep": run_noise_flip_sweep,
    "ConcentrationCheck": run_concentration_check,
    "NoiseSigmaCheck": run_noise_sigma_check,
}


def run_experiment(config: ExperimentConfig) -> list[TrialRecord]:
    return _RUNNERS[config.experiment](config)


def _format_cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def emit_csv(records: list[TrialRecord], path) -> None:
    """Header then one line per record; reals at 9 significant digits;
    row order is whatever the runner produced (grid-major, then trial)."""
    with open(path, "w") as fh:
        fh.write(",".join(CSV_COLUMNS) + "\n")
        for rec in records:
            rec.validate()
            fh.write(",".join(_format_cell(getattr(rec, col))
                              for col in CSV_COLUMNS) + "\n")


def records_to_rows(records: list[TrialRecord]) -> list[dict]:
    return [{col: getattr(rec, col) for col in CSV_COLUMNS} for rec in records]
