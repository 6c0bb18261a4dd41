"""Binary iterative hard thresholding and its objective-variant family.

The decoder target is the consistency residual u = y ⊙ (Φx): every
variant's objective is zero exactly when u >= 0 componentwise, and each
descent direction is a negative (sub)gradient of its objective.

Variants:

* one-sided l1   ``||[u]_-||_1``      step direction (1/2) Φ^T (y - sign(Φx))
* one-sided l2   ``(1/2)||[u]_-||_2^2``  direction -Φ^T (y ⊙ [u]_-)
* hinge          ``||[κ1 - u]_+||_1``  direction Φ^T (y ⊙ 1[u <= κ])
* hybrid         piecewise |u| near zero, quadratic below -1/2

The hybrid per-coordinate penalty is 0 for t >= 0, |t| for
-1/2 <= t < 0, and t^2 + 1/4 for t < -1/2 (continuous everywhere,
differentiable except at 0; at the origin kink the steeper subgradient
-1 is taken so the all-zero start can move).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _kernels
from .errors import DimensionError, DivergenceError, ParameterError
from .measurement import as_sign_vector, hamming_distance, sign_map
from .numerics import SparseSignal, spectral_norm, unit_normalize


class ObjectiveKind(Enum):
    ONE_SIDED_L1 = "l1"
    ONE_SIDED_L2 = "l2"
    HINGE = "hinge"
    HYBRID = "hybrid"


_VARIANT_CODES = {
    ObjectiveKind.ONE_SIDED_L1: 0,
    ObjectiveKind.ONE_SIDED_L2: 1,
    ObjectiveKind.HINGE: 2,
    ObjectiveKind.HYBRID: 3,
}


@dataclass(frozen=True)
class ObjectiveVariant:
    kind: ObjectiveKind
    kappa: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.kappa) or self.kappa < 0:
            raise ParameterError(f"kappa must be finite and >= 0, got {self.kappa}")
        if self.kind is ObjectiveKind.HINGE and self.kappa <= 0:
            raise ParameterError("the hinge objective requires kappa > 0")

    @property
    def name(self) -> str:
        return self.kind.value


ONE_SIDED_L1 = ObjectiveVariant(ObjectiveKind.ONE_SIDED_L1)
ONE_SIDED_L2 = ObjectiveVariant(ObjectiveKind.ONE_SIDED_L2)
HYBRID = ObjectiveVariant(ObjectiveKind.HYBRID)


def hinge(kappa: float) -> ObjectiveVariant:
    return ObjectiveVariant(ObjectiveKind.HINGE, kappa)


def variant_from_name(name: str, kappa: float = 1.0) -> ObjectiveVariant:
    try:
        kind = ObjectiveKind(name)
    except ValueError:
        valid = ", ".join(k.value for k in ObjectiveKind)
        raise ParameterError(f"unknown variant {name!r} (expected one of {valid})")
    if kind is ObjectiveKind.HINGE:
        return hinge(kappa)
    return ObjectiveVariant(kind)


@dataclass
class BihtConfig:
    """Reconstruction parameters.

    ``tau=None`` means "use default_step for the variant and matrix at
    call time".
    """

    variant: ObjectiveVariant = field(default=ONE_SIDED_L1)
    tau: float | None = None
    max_iter: int = 100
    sphere_projection: bool = False
    halt_on_consistency: bool = True

    def __post_init__(self):
        if self.tau is not None and not (math.isfinite(self.tau) and self.tau > 0):
            raise ParameterError(f"tau must be finite and positive, got {self.tau}")
        if self.max_iter < 1:
            raise ParameterError(f"max_iter must be >= 1, got {self.max_iter}")


@dataclass
class ReconResult:
    estimate: SparseSignal
    iterations_run: int
    consistent: bool
    final_hamming: float
    objective_trace: np.ndarray


def objective_eval(variant: ObjectiveVariant, y: np.ndarray, phi: np.ndarray,
                   x: np.ndarray) -> tuple[float, np.ndarray]:
    """Objective value at x and a descent direction (negative subgradient).

    For the one-sided l1 the direction is exactly (1/2) Φ^T (y - sign(Φx))
    with sign(0) = -1.
    """
    y = as_sign_vector(y)
    phi = np.asarray(phi, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if phi.ndim != 2 or phi.shape[0] != y.size or phi.shape[1] != x.size:
        raise DimensionError(
            f"shape mismatch: phi {phi.shape}, y length {y.size}, x length {x.size}")
    yf = y.astype(np.float64)
    z = phi @ x
    u = yf * z
    kind = variant.kind
    if kind is ObjectiveKind.ONE_SIDED_L1:
        value = float(np.sum(np.maximum(-u, 0.0)))
        direction = 0.5 * (phi.T @ (yf - np.where(z > 0.0, 1.0, -1.0)))
    elif kind is ObjectiveKind.ONE_SIDED_L2:
        neg = np.minimum(u, 0.0)
        value = 0.5 * float(np.sum(neg * neg))
        direction = -(phi.T @ (yf * neg))
    elif kind is ObjectiveKind.HINGE:
        value = float(np.sum(np.maximum(variant.kappa - u, 0.0)))
        direction = phi.T @ np.where(u <= variant.kappa, yf, 0.0)
    else:
        absbranch = np.where((u < 0.0) & (u >= -0.5), -u, 0.0)
        sqbranch = np.where(u < -0.5, u * u + 0.25, 0.0)
        value = float(np.sum(absbranch + sqbranch))
        c = np.where(u > 0.0, 0.0, np.where(u >= -0.5, -1.0, 2.0 * u))
        direction = phi.T @ (-(yf * c))
    return value, direction


def default_step(variant: ObjectiveVariant, phi: np.ndarray,
                 sphere_projection: bool = False) -> float:
    """Step size rule: 2/M for the plain one-sided objectives,
    1/(sqrt(M) ||Φ||_2) when the per-iteration sphere projection is on,
    κ/||Φ||_2 for the hinge."""
    phi = np.asarray(phi, dtype=np.float64)
    if phi.ndim != 2:
        raise DimensionError("default_step expects a 2-D matrix")
    m = phi.shape[0]
    if sphere_projection:
        norm = spectral_norm(phi)
        if norm == 0.0:
            raise ParameterError("default_step undefined for an all-zero matrix")
        return 1.0 / (math.sqrt(m) * norm)
    if variant.kind is ObjectiveKind.HINGE:
        norm = spectral_norm(phi)
        if norm == 0.0:
            raise ParameterError("default_step undefined for an all-zero matrix")
        return variant.kappa / norm
    return 2.0 / m


def biht(y: np.ndarray, phi: np.ndarray, sparsity: int,
         config: BihtConfig | None = None) -> ReconResult:
    """Reconstruct a unit-norm ``sparsity``-sparse signal from sign
    measurements y of the matrix phi.

    Starts from the all-zero vector, alternates a subgradient step on the
    variant objective with hard thresholding (optionally renormalizing
    each iterate), and stops on sign consistency (when configured) or
    after max_iter.  The final iterate, projected onto the unit sphere,
    is returned; per-iterate objective values are kept in the trace.

    Raises DivergenceError on a non-finite iterate, or in the degenerate
    case where the final iterate is identically zero (possible only when
    y is the measurement pattern of the zero vector itself).
    """
    if config is None:
        config = BihtConfig()
    y = as_sign_vector(y)
    phi = np.ascontiguousarray(phi, dtype=np.float64)
    if phi.ndim != 2 or phi.shape[0] != y.size:
        raise DimensionError(
            f"shape mismatch: phi {phi.shape} vs {y.size} measurements")
    n = phi.shape[1]
    if not 1 <= sparsity <= n:
        raise ParameterError(f"need 1 <= sparsity <= {n}, got {sparsity}")
    tau = config.tau
    if tau is None:
        tau = default_step(config.variant, phi, config.sphere_projection)
    yf = y.astype(np.float64)
    final_x, iters, trace, _, status, bad_iter = _kernels.biht_core(
        phi, yf, sparsity, tau,
        _VARIANT_CODES[config.variant.kind], config.variant.kappa,
        config.sphere_projection, config.halt_on_consistency, config.max_iter)
    if status == 1:
        raise DivergenceError(f"non-finite iterate at iteration {bad_iter}; "
                              "reduce the step size tau")
    peak = float(np.max(np.abs(final_x))) if final_x.size else 0.0
    if peak > 1e150:
        # huge-but-finite iterates (large tau): normalize scale first so
        # the squared norm cannot overflow
        final_x = final_x / peak
    unit, zero = unit_normalize(final_x)
    if zero:
        raise DivergenceError("the final iterate is the zero vector; "
                              "the measurements are consistent only with 0")
    estimate = SparseSignal.from_dense(unit)
    final_hamming = hamming_distance(sign_map(phi, unit), y)
    return ReconResult(
        estimate=estimate,
        iterations_run=int(iters),
        consistent=final_hamming == 0.0,
        final_hamming=final_hamming,
        objective_trace=trace[:iters].copy(),
    )


def sign_residual(y: np.ndarray, phi: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Consistency residual u = y ⊙ (Φx); negative entries are violated
    measurements."""
    y = as_sign_vector(y)
    z = np.asarray(phi, dtype=np.float64) @ np.asarray(x, dtype=np.float64)
    return y.astype(np.float64) * z


__all__ = [
    "ObjectiveKind", "ObjectiveVariant", "ONE_SIDED_L1", "ONE_SIDED_L2",
    "HYBRID", "hinge", "variant_from_name", "BihtConfig", "ReconResult",
    "objective_eval", "default_step", "biht", "sign_residual",
]
