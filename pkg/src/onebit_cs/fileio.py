"""Text formats for matrices, vectors and sign vectors.

Matrix format: first line ``rows cols``, then whitespace-separated
row-major values at 17 significant digits (full float64 round-trip).
Vectors use the same format with header ``len 1``.  Sign vectors: first
line ``len``, then one +1/-1 per line.

Malformed content raises ParameterError (CLI exit 1); filesystem
failures surface as OSError (CLI exit 2).
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, ParameterError
from .measurement import as_sign_vector


def write_matrix(path, m: np.ndarray) -> None:
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise DimensionError("write_matrix expects a 2-D array")
    with open(path, "w") as fh:
        fh.write(f"{m.shape[0]} {m.shape[1]}\n")
        for row in m:
            fh.write(" ".join(format(v, ".17g") for v in row))
            fh.write("\n")


def write_vector(path, v: np.ndarray) -> None:
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1:
        raise DimensionError("write_vector expects a 1-D array")
    write_matrix(path, v.reshape(-1, 1))


def _parse_array(path) -> tuple[int, int, np.ndarray]:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ParameterError(f"{path}: header must be 'rows cols'")
        try:
            rows, cols = int(header[0]), int(header[1])
        except ValueError:
            raise ParameterError(f"{path}: non-integer header {header!r}")
        if rows < 1 or cols < 1:
            raise ParameterError(f"{path}: dimensions must be positive")
        tokens = fh.read().split()
        try:
            data = np.fromiter(map(float, tokens), dtype=np.float64, count=len(tokens))
        except ValueError:
            raise ParameterError(f"{path}: malformed numeric data")
    if data.size != rows * cols:
        raise ParameterError(
            f"{path}: expected {rows * cols} values, found {data.size}")
    if not np.all(np.isfinite(data)):
        raise ParameterError(f"{path}: non-finite entries")
    return rows, cols, data


def read_matrix(path) -> np.ndarray:
    rows, cols, data = _parse_array(path)
    return data.reshape(rows, cols)


def read_vector(path) -> np.ndarray:
    rows, cols, data = _parse_array(path)
    if cols != 1:
        raise ParameterError(f"{path}: a vector must have header 'len 1'")
    return data.reshape(rows)


def write_signs(path, y: np.ndarray) -> None:
    y = as_sign_vector(y)
    with open(path, "w") as fh:
        fh.write(f"{y.size}\n")
        for b in y:
            fh.write(f"{'+1' if b > 0 else '-1'}\n")


def read_signs(path) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 1:
            raise ParameterError(f"{path}: sign header must be 'len'")
        try:
            length = int(header[0])
        except ValueError:
            raise ParameterError(f"{path}: non-integer length {header!r}")
        bits = []
        for line in fh:
            token = line.strip()
            if not token:
                continue
            if token not in ("+1", "1", "-1"):
                raise ParameterError(f"{path}: sign entries must be +1 or -1, got {token!r}")
            bits.append(1 if token in ("+1", "1") else -1)
    if len(bits) != length:
        raise ParameterError(f"{path}: expected {length} signs, found {len(bits)}")
    return np.asarray(bits, dtype=np.int8)
