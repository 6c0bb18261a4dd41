"""1-bit measurement maps and the three error metrics.

Sign vectors are 1-D int8 arrays of +1/-1.  The hard convention used
everywhere: sign(0) = -1.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError, ParameterError
from .rng import PrngStream, gaussian, index_subset

SNR_CAP_DB = 300.0

_UNIT_INPUT_TOL = 1e-9


def signs_of(z: np.ndarray) -> np.ndarray:
    """Componentwise sign with sign(0) = -1, as an int8 vector."""
    return np.where(np.asarray(z) > 0, 1, -1).astype(np.int8)


def as_sign_vector(bits) -> np.ndarray:
    bits = np.asarray(bits)
    if bits.ndim != 1:
        raise DimensionError("sign vector must be 1-D")
    out = bits.astype(np.int8)
    if not np.all((out == 1) | (out == -1)) or not np.array_equal(out, bits):
        raise ParameterError("sign vector entries must be exactly +1 or -1")
    return out


def sign_map(phi: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Quantized measurements sign(phi @ x) with sign(0) = -1."""
    phi = np.asarray(phi, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if phi.ndim != 2 or x.ndim != 1 or phi.shape[1] != x.size:
        raise DimensionError(
            f"shape mismatch: phi is {phi.shape}, x has length {x.size}")
    return signs_of(phi @ x)


def noisy_sign_map(phi: np.ndarray, x: np.ndarray, sigma: float,
                   stream: PrngStream | None = None) -> np.ndarray:
    """Signs of phi @ x + n with n_i i.i.d. N(0, sigma^2).

    sigma = 0 is exactly sign_map and consumes nothing from the stream.
    """
    if sigma < 0:
        raise ParameterError(f"sigma must be non-negative, got {sigma}")
    if sigma == 0.0:
        return sign_map(phi, x)
    if stream is None:
        raise ParameterError("a stream is required when sigma > 0")
    phi = np.asarray(phi, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if phi.ndim != 2 or phi.shape[1] != x.size:
        raise DimensionError(
            f"shape mismatch: phi is {phi.shape}, x has length {x.size}")
    z = phi @ x + sigma * gaussian(stream, phi.shape[0])
    return signs_of(z)


def flip_signs(y: np.ndarray, count: int, stream: PrngStream) -> np.ndarray:
    """Negate exactly ``count`` positions chosen uniformly without
    replacement."""
    y = as_sign_vector(y)
    if not 0 <= count <= y.size:
        raise ParameterError(f"count must be in [0, {y.size}], got {count}")
    out = y.copy()
    if count:
        pos = index_subset(stream, y.size, count)
        out[pos] = -out[pos]
    return out


def hamming_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Normalized Hamming distance: fraction of differing entries."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.count_nonzero(a != b)) / a.size


def angular_distance(x: np.ndarray, s: np.ndarray) -> float:
    """Normalized angle arccos(<x, s>) / pi for unit-norm x, s.

    The inner product is clamped to [-1, 1] before arccos so that
    floating-point dot products a hair outside the interval stay legal.
    """
    x = np.asarray(x, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    if x.shape != s.shape:
        raise DimensionError(f"length mismatch: {x.shape} vs {s.shape}")
    for name, v in (("x", x), ("s", s)):
        if abs(np.linalg.norm(v) - 1.0) > _UNIT_INPUT_TOL:
            raise ParameterError(f"{name} must be unit-norm within {_UNIT_INPUT_TOL}")
    dot = min(1.0, max(-1.0, float(np.dot(x, s))))
    return math.acos(dot) / math.pi


def reconstruction_snr(x: np.ndarray, xstar: np.ndarray) -> float:
    """Reconstruction SNR in dB: 10 log10(||x||^2 / ||x - x*||^2).

    Error norms below 1e-15 * ||x|| (including exact recovery) return the
    documented finite cap of +300 dB.
    """
    x = np.asarray(x, dtype=np.float64)
    xstar = np.asarray(xstar, dtype=np.float64)
    if x.shape != xstar.shape:
        raise DimensionError(f"length mismatch: {x.shape} vs {xstar.shape}")
    nx = float(np.linalg.norm(x))
    if nx == 0.0:
        raise ParameterError("SNR undefined for an all-zero reference signal")
    err = float(np.linalg.norm(x - xstar))
    if err < 1e-15 * nx:
        return SNR_CAP_DB
    return min(SNR_CAP_DB, 10.0 * math.log10(nx * nx / (err * err)))


def orthant_pattern(z: np.ndarray) -> np.ndarray:
    """Sign pattern identifying the orthant containing z (sign(0) = -1)."""
    z = np.asarray(z, dtype=np.float64)
    if z.ndim != 1:
        raise DimensionError("orthant_pattern expects a 1-D vector")
    return signs_of(z)
