"""1-bit compressive sensing: sign-quantized Gaussian measurements, the
BIHT reconstruction family, closed-form performance bounds, brute-force
oracles and a reproducible Monte-Carlo harness."""

from ._kernels import BACKEND
from .errors import (DimensionError, DivergenceError, ParameterError,
                     TractabilityError)
from .measurement import (angular_distance, flip_signs, hamming_distance,
                          noisy_sign_map, orthant_pattern, reconstruction_snr,
                          sign_map, signs_of)
from .numerics import (SparseSignal, gaussian_matrix, hard_threshold,
                       random_sparse_unit_signal, spectral_norm, unit_normalize)
from .oracle import (GridSpec, brute_force_decoder, consistent_grid_points,
                     finite_difference_direction, sampled_orthant_count)
from .recon import (HYBRID, ONE_SIDED_L1, ONE_SIDED_L2, BihtConfig,
                    ObjectiveKind, ObjectiveVariant, ReconResult, biht,
                    default_step, hinge, objective_eval, variant_from_name)
from .rng import PrngStream, derive, gaussian, prng_new, uniform
from .theory import (BoundReport, bese_epsilon_given_m,
                     concentration_failure_prob, evaluate_bound,
                     expected_flip_bound, lower_bound_error,
                     measurements_for_bese, measurements_for_consistency,
                     noisy_error_bound, orthant_bound_simple,
                     orthant_bound_tight, quantization_points_bound)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "__version__",
    "ParameterError", "DimensionError", "TractabilityError", "DivergenceError",
    "PrngStream", "prng_new", "derive", "gaussian", "uniform",
    "SparseSignal", "gaussian_matrix", "random_sparse_unit_signal",
    "hard_threshold", "unit_normalize", "spectral_norm",
    "sign_map", "noisy_sign_map", "flip_signs", "hamming_distance",
    "angular_distance", "reconstruction_snr", "orthant_pattern", "signs_of",
    "ObjectiveKind", "ObjectiveVariant", "ONE_SIDED_L1", "ONE_SIDED_L2",
    "HYBRID", "hinge", "BihtConfig", "ReconResult", "biht", "default_step",
    "objective_eval", "variant_from_name",
    "BoundReport", "lower_bound_error", "measurements_for_consistency",
    "measurements_for_bese", "bese_epsilon_given_m",
    "concentration_failure_prob", "expected_flip_bound",
    "orthant_bound_tight", "orthant_bound_simple",
    "quantization_points_bound", "noisy_error_bound", "evaluate_bound",
    "GridSpec", "sampled_orthant_count", "brute_force_decoder",
    "consistent_grid_points", "finite_difference_direction",
]
