"""Brute-force reference implementations used by tests.

These are deliberately naive: sampled orthant counting (a lower bound on
the true intersected-orthant count) and a grid-search consistent decoder
for instances small enough to enumerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, TractabilityError
from .measurement import as_sign_vector
from .rng import PrngStream, gaussian

_MAX_GRID_DIM = 12


@dataclass(frozen=True)
class GridSpec:
    """Search grid for the brute-force decoder.

    points_per_dimension sets the angular resolution of the K=2 search;
    supports_enumerated must be True (exhausting all supports is the only
    implemented strategy; the flag exists so a partial search request
    fails loudly instead of silently degrading).
    """

    points_per_dimension: int = 64
    supports_enumerated: bool = True

    def __post_init__(self):
        if self.points_per_dimension < 2:
            raise ParameterError(
                f"points_per_dimension must be >= 2, got {self.points_per_dimension}")


def sampled_orthant_count(basis: np.ndarray, n_samples: int,
                          stream: PrngStream) -> int:
    """Distinct orthant patterns hit by random points of span(basis).

    Counts the orthant patterns of ``basis @ c`` over ``n_samples``
    standard-normal coefficient vectors; a lower bound on the number of
    orthants the subspace intersects, non-decreasing in n_samples.
    """
    basis = np.asarray(basis, dtype=np.float64)
    if basis.ndim != 2:
        raise ParameterError("basis must be a 2-D array (columns span the subspace)")
    if n_samples < 1:
        raise ParameterError(f"n_samples must be >= 1, got {n_samples}")
    k = basis.shape[1]
    if np.linalg.matrix_rank(basis) < k:
        raise ParameterError("basis columns must be linearly independent")
    coeffs = gaussian(stream, n_samples * k).reshape(n_samples, k)
    patterns = (coeffs @ basis.T) > 0.0
    return int(np.unique(patterns, axis=0).shape[0])


def _candidate_signs(cols: np.ndarray) -> np.ndarray:
    return cols > 0.0


def brute_force_decoder(y: np.ndarray, phi: np.ndarray, sparsity: int,
                        grid: GridSpec) -> tuple[np.ndarray, bool]:
    """Exhaustive consistent decoder over a sparse candidate grid.

    Enumerates every size-``sparsity`` support in ascending order.  K=1
    grids the two unit poles (+ then -) of each axis; K=2 grids
    points_per_dimension equispaced angles of each coordinate circle.
    Returns the first consistent candidate in that deterministic order,
    or, when none is consistent, the earliest candidate of minimum
    Hamming distance to y.
    """
    y = as_sign_vector(y)
    phi = np.asarray(phi, dtype=np.float64)
    if phi.ndim != 2 or phi.shape[0] != y.size:
        raise ParameterError(f"shape mismatch: phi {phi.shape} vs {y.size} signs")
    n = phi.shape[1]
    if sparsity not in (1, 2):
        raise TractabilityError(f"brute force supports sparsity 1 or 2, got {sparsity}")
    if n > _MAX_GRID_DIM:
        raise TractabilityError(f"brute force limited to {_MAX_GRID_DIM} columns, got {n}")
    if sparsity > n:
        raise ParameterError(f"sparsity {sparsity} exceeds signal dimension {n}")
    if not grid.supports_enumerated:
        raise ParameterError("supports_enumerated=False is not implemented; "
                             "all supports are always enumerated")

    target = y > 0
    best_vec = None
    best_dh = math.inf

    def scan(vectors: np.ndarray, signs: np.ndarray):
        # vectors: candidates x N, signs: candidates x M booleans
        nonlocal best_vec, best_dh
        match = signs == target[None, :]
        consistent = np.flatnonzero(match.all(axis=1))
        if consistent.size:
            return vectors[consistent[0]]
        dh = np.count_nonzero(~match, axis=1) / y.size
        i = int(np.argmin(dh))
        if dh[i] < best_dh:
            best_dh = float(dh[i])
            best_vec = vectors[i]
        return None

    if sparsity == 1:
        for j in range(n):
            cols = np.outer(np.array([1.0, -1.0]), phi[:, j])
            vecs = np.zeros((2, n))
            vecs[0, j] = 1.0
            vecs[1, j] = -1.0
            hit = scan(vecs, _candidate_signs(cols))
            if hit is not None:
                return hit, True
    else:
        p = grid.points_per_dimension
        theta = 2.0 * math.pi * np.arange(p) / p
        cos_t, sin_t = np.cos(theta), np.sin(theta)
        for i in range(n):
            for j in range(i + 1, n):
                z = np.outer(cos_t, phi[:, i]) + np.outer(sin_t, phi[:, j])
                vecs = np.zeros((p, n))
                vecs[:, i] = cos_t
                vecs[:, j] = sin_t
                hit = scan(vecs, _candidate_signs(z))
                if hit is not None:
                    return hit, True
    return best_vec, False


def consistent_grid_points(y: np.ndarray, phi: np.ndarray, sparsity: int,
                           grid: GridSpec) -> list[np.ndarray]:
    """All consistent candidates of the brute-force grid, in search order.

    Test helper: the spread of this set is the size of the consistent
    cell the decoder lands in.
    """
    y = as_sign_vector(y)
    phi = np.asarray(phi, dtype=np.float64)
    n = phi.shape[1]
    if sparsity not in (1, 2):
        raise TractabilityError(f"brute force supports sparsity 1 or 2, got {sparsity}")
    if n > _MAX_GRID_DIM:
        raise TractabilityError(f"brute force limited to {_MAX_GRID_DIM} columns, got {n}")
    target = y > 0
    found = []
    if sparsity == 1:
        for j in range(n):
            for s in (1.0, -1.0):
                if np.array_equal((s * phi[:, j]) > 0.0, target):
                    vec = np.zeros(n)
                    vec[j] = s
                    found.append(vec)
    else:
        p = grid.points_per_dimension
        theta = 2.0 * math.pi * np.arange(p) / p
        cos_t, sin_t = np.cos(theta), np.sin(theta)
        for i in range(n):
            for j in range(i + 1, n):
                z = np.outer(cos_t, phi[:, i]) + np.outer(sin_t, phi[:, j])
                ok = np.flatnonzero(((z > 0.0) == target[None, :]).all(axis=1))
                for t in ok:
                    vec = np.zeros(n)
                    vec[i] = cos_t[t]
                    vec[j] = sin_t[t]
                    found.append(vec)
    return found


def finite_difference_direction(objective, x: np.ndarray, direction: np.ndarray,
                                h: float) -> float:
    """Central difference (f(x + h d) - f(x - h d)) / (2h)."""
    if h <= 0:
        raise ParameterError(f"h must be positive, got {h}")
    x = np.asarray(x, dtype=np.float64)
    direction = np.asarray(direction, dtype=np.float64)
    return (objective(x + h * direction) - objective(x - h * direction)) / (2.0 * h)
