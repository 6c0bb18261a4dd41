"""Dense linear-algebra primitives and the sparsity projection.

Matrices are plain 2-D float64 numpy arrays in row-major (C) order;
signals are 1-D float64 arrays.  SparseSignal is the support/values view
of a unit-norm sparse vector.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError
from .rng import PrngStream, gaussian, index_subset, prng_new

UNIT_NORM_TOL = 1e-12

# fixed internal seed for the power-iteration start vector; any constant
# works, it only has to be deterministic and generic
_POWER_ITER_SEED = 0x5EED1E55


@dataclass
class SparseSignal:
    """Unit-norm sparse vector: support indices (strictly increasing) plus
    the values on that support."""

    dim: int
    support: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        self.support = np.asarray(self.support, dtype=np.int64)
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.dim < 1:
            raise ParameterError(f"dim must be positive, got {self.dim}")
        if self.support.shape != self.values.shape or self.support.ndim != 1:
            raise DimensionError("support and values must be 1-D and aligned")
        if self.support.size > self.dim:
            raise ParameterError("support larger than ambient dimension")
        if self.support.size:
            if self.support[0] < 0 or self.support[-1] >= self.dim:
                raise ParameterError("support index out of range")
            if np.any(np.diff(self.support) <= 0):
                raise ParameterError("support must be strictly increasing")
        norm = float(np.linalg.norm(self.values))
        if abs(norm - 1.0) > UNIT_NORM_TOL:
            raise ParameterError(f"values must have unit norm, got {norm!r}")

    @property
    def sparsity(self) -> int:
        return int(self.support.size)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dim, dtype=np.float64)
        dense[self.support] = self.values
        return dense

    @classmethod
    def from_dense(cls, vec: np.ndarray) -> "SparseSignal":
        vec = np.asarray(vec, dtype=np.float64)
        support = np.flatnonzero(vec)
        return cls(dim=vec.size, support=support, values=vec[support])


def gaussian_matrix(rows: int, cols: int, stream: PrngStream) -> np.ndarray:
    """rows x cols matrix of i.i.d. N(0,1) entries, filled row-major."""
    if rows < 1 or cols < 1:
        raise DimensionError(f"matrix dimensions must be positive, got {rows}x{cols}")
    return gaussian(stream, rows * cols).reshape(rows, cols)


def random_sparse_unit_signal(dim: int, sparsity: int, stream: PrngStream) -> SparseSignal:
    """K-sparse unit vector: support uniform over C(dim, K) subsets, values
    i.i.d. standard normal then normalized (uniform on the K-sphere)."""
    if not 1 <= sparsity <= dim:
        raise ParameterError(f"need 1 <= sparsity <= dim, got {sparsity}, {dim}")
    support = index_subset(stream, dim, sparsity)
    while True:
        values = gaussian(stream, sparsity)
        norm = float(np.linalg.norm(values))
        if norm > 0.0:
            break
    return SparseSignal(dim=dim, support=support, values=values / norm)


def hard_threshold(v: np.ndarray, sparsity: int) -> np.ndarray:
    """Best K-term approximation: keep the ``sparsity`` largest-magnitude
    entries, zero the rest.  Magnitude ties keep the lower index.
    ``sparsity`` >= len(v) returns a copy of v unchanged."""
    if sparsity < 0:
        raise ParameterError(f"sparsity must be non-negative, got {sparsity}")
    v = np.asarray(v, dtype=np.float64)
    if sparsity >= v.size:
        return v.copy()
    out = np.zeros_like(v)
    if sparsity == 0:
        return out
    keep = np.argsort(-np.abs(v), kind="stable")[:sparsity]
    out[keep] = v[keep]
    return out


def unit_normalize(v: np.ndarray) -> tuple[np.ndarray, bool]:
    """Return (v / ||v||_2, False), or (copy of v, True) when ||v|| == 0.

    The flag is the zero-norm signal; the caller decides how to treat it.
    """
    v = np.asarray(v, dtype=np.float64)
    norm = float(np.sqrt(np.dot(v, v)))
    if norm == 0.0:
        return v.copy(), True
    return v / norm, False


def spectral_norm(m: np.ndarray, tol: float = 1e-10, max_iter: int = 500) -> float:
    """Largest singular value by power iteration on m^T m.

    Stops when the relative change of the estimate drops below ``tol`` or
    after ``max_iter`` sweeps.  An all-zero matrix returns 0.
    """
    if tol <= 0:
        raise ParameterError(f"tol must be positive, got {tol}")
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise DimensionError("spectral_norm expects a 2-D array")
    stream = prng_new(_POWER_ITER_SEED)
    v = gaussian(stream, m.shape[1])
    v /= np.linalg.norm(v)
    sigma_prev = 0.0
    sigma = 0.0
    for _ in range(max_iter):
        w = m @ v
        sigma = float(np.linalg.norm(w))
        if sigma == 0.0:
            return 0.0
        v = m.T @ w
        nv = float(np.linalg.norm(v))
        if nv == 0.0:
            return 0.0
        v /= nv
        if abs(sigma - sigma_prev) <= tol * sigma:
            break
        sigma_prev = sigma
    return sigma
