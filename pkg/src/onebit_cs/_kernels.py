"""BIHT iteration kernels: numba-jitted hot path plus a pure-numpy twin.

Backend selection: the environment variable ONEBIT_CS_BACKEND may be set
to "numba" or "numpy"; unset (or "auto") uses numba when importable and
falls back to numpy otherwise.  The choice is read once at import.

Both kernels implement the identical algorithm:

    x^0 = 0
    a^(l+1) = x^l + tau * d(x^l)        d = variant descent direction
    x^(l+1) = top-K threshold of a^(l+1), optionally renormalized
    stop on sign consistency (optional) or after max_iter

and return the final iterate (the halting iterate when the consistency
halt triggers).  Variant codes: 0 = one-sided l1, 1 = one-sided l2,
2 = hinge, 3 = hybrid.

The one-sided l2 objective is differentiable with zero gradient at the
all-zero start even though the start is sign-inconsistent; when that
(and only that) degenerate stall occurs, the kernels substitute the
one-sided l1 subgradient step for the stalled iteration so the descent
can begin.

Status codes returned: 0 = ok, 1 = non-finite iterate at ``bad_iter``.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

from .errors import ParameterError

_ENV_VAR = "ONEBIT_CS_BACKEND"


def _pick_backend() -> str:
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice in ("numpy", "np"):
        return "numpy"
    if choice in ("auto", "", "numba"):
        try:
            import numba  # noqa: F401
            return "numba"
        except ImportError:
            if choice == "numba":
                warnings.warn(f"{_ENV_VAR}=numba but numba is not importable; "
                              "falling back to numpy", RuntimeWarning)
            return "numpy"
    raise ParameterError(f"unrecognized {_ENV_VAR}={choice!r} "
                         "(expected 'numba', 'numpy' or 'auto')")


BACKEND = _pick_backend()


def _topk_numpy(a: np.ndarray, k: int) -> np.ndarray:
    out = np.zeros_like(a)
    keep = np.argsort(-np.abs(a), kind="stable")[:k]
    out[keep] = a[keep]
    return out


def _value_numpy(variant: int, u: np.ndarray, kappa: float) -> float:
    if variant == 0:
        return float(np.sum(np.maximum(-u, 0.0)))
    if variant == 1:
        neg = np.minimum(u, 0.0)
        return 0.5 * float(np.sum(neg * neg))
    if variant == 2:
        return float(np.sum(np.maximum(kappa - u, 0.0)))
    absbranch = np.where((u < 0.0) & (u >= -0.5), -u, 0.0)
    sqbranch = np.where(u < -0.5, u * u + 0.25, 0.0)
    return float(np.sum(absbranch + sqbranch))


def biht_core_numpy(phi, y, sparsity, tau, variant, kappa, sphere, halt, max_iter):
    with np.errstate(over="ignore", invalid="ignore"):
        return _biht_loop_numpy(phi, y, sparsity, tau, variant, kappa, sphere,
                                halt, max_iter)


def _biht_loop_numpy(phi, y, sparsity, tau, variant, kappa, sphere, halt, max_iter):
    m, n = phi.shape
    x = np.zeros(n)
    z = np.zeros(m)
    trace = np.zeros(max_iter)
    iters = 0
    halted = False
    for l in range(max_iter):
        u = y * z
        if variant == 0:
            d = 0.5 * (phi.T @ (y - np.where(z > 0.0, 1.0, -1.0)))
        elif variant == 1:
            g = y * np.minimum(u, 0.0)
            if np.any(g != 0.0):
                d = -(phi.T @ g)
            else:
                signs = np.where(z > 0.0, 1.0, -1.0)
                if np.array_equal(signs, y):
                    d = np.zeros(n)
                else:
                    # degenerate stall: take the l1 subgradient step
                    d = 0.5 * (phi.T @ (y - signs))
        elif variant == 2:
            d = phi.T @ np.where(u <= kappa, y, 0.0)
        else:
            c = np.where(u > 0.0, 0.0, np.where(u >= -0.5, -1.0, 2.0 * u))
            d = phi.T @ (-(y * c))
        a = x + tau * d
        if not np.all(np.isfinite(a)):
            return x, iters, trace, halted, 1, l + 1
        x = _topk_numpy(a, sparsity)
        if sphere:
            nx = np.sqrt(np.dot(x, x))
            if nx > 0.0:
                x = x / nx
        z = phi @ x
        trace[l] = _value_numpy(variant, y * z, kappa)
        iters = l + 1
        if halt and np.array_equal(np.where(z > 0.0, 1.0, -1.0), y):
            halted = True
            break
    return x, iters, trace, halted, 0, 0


if BACKEND == "numba":
    from numba import njit

    @njit(cache=True)
    def biht_core_numba(phi, y, sparsity, tau, variant, kappa, sphere, halt, max_iter):  # pragma: no cover - numba
        m, n = phi.shape
        x = np.zeros(n)
        z = np.zeros(m)
        trace = np.zeros(max_iter)
        iters = 0
        halted = False
        for l in range(max_iter):
            if variant == 0:
                r = np.empty(m)
                for i in range(m):
                    r[i] = y[i] - (1.0 if z[i] > 0.0 else -1.0)
                d = 0.5 * (phi.T @ r)
            elif variant == 1:
                g = np.empty(m)
                any_violation = False
                for i in range(m):
                    u = y[i] * z[i]
                    if u < 0.0:
                        g[i] = y[i] * u
                        any_violation = True
                    else:
                        g[i] = 0.0
                if any_violation:
                    d = -(phi.T @ g)
                else:
                    consistent = True
                    for i in range(m):
                        if (1.0 if z[i] > 0.0 else -1.0) != y[i]:
                            consistent = False
                            break
                    if consistent:
                        d = np.zeros(n)
                    else:
                        r = np.empty(m)
                        for i in range(m):
                            r[i] = y[i] - (1.0 if z[i] > 0.0 else -1.0)
                        d = 0.5 * (phi.T @ r)
            elif variant == 2:
                g = np.empty(m)
                for i in range(m):
                    g[i] = y[i] if y[i] * z[i] <= kappa else 0.0
                d = phi.T @ g
            else:
                g = np.empty(m)
                for i in range(m):
                    u = y[i] * z[i]
                    if u > 0.0:
                        g[i] = 0.0
                    elif u >= -0.5:
                        g[i] = y[i]
                    else:
                        g[i] = -y[i] * (2.0 * u)
                d = phi.T @ g
            a = x + tau * d
            finite = True
            for j in range(n):
                if not np.isfinite(a[j]):
                    finite = False
                    break
            if not finite:
                return x, iters, trace, halted, 1, l + 1
            # top-K by magnitude, ties keep the lower index
            x = np.zeros(n)
            used = np.zeros(n, dtype=np.bool_)
            kk = sparsity if sparsity < n else n
            for _ in range(kk):
                best_i = -1
                best_m = -1.0
                for j in range(n):
                    if used[j]:
                        continue
                    mag = abs(a[j])
                    if mag > best_m:
                        best_m = mag
                        best_i = j
                used[best_i] = True
                x[best_i] = a[best_i]
            if sphere:
                nx = np.sqrt(np.dot(x, x))
                if nx > 0.0:
                    x = x / nx
            z = phi @ x
            val = 0.0
            if variant == 0:
                for i in range(m):
                    u = y[i] * z[i]
                    if u < 0.0:
                        val += -u
            elif variant == 1:
                acc = 0.0
                for i in range(m):
                    u = y[i] * z[i]
                    if u < 0.0:
                        acc += u * u
                val = 0.5 * acc
            elif variant == 2:
                for i in range(m):
                    u = y[i] * z[i]
                    if u < kappa:
                        val += kappa - u
            else:
                for i in range(m):
                    u = y[i] * z[i]
                    if u < 0.0:
                        val += -u if u >= -0.5 else u * u + 0.25
            trace[l] = val
            iters = l + 1
            if halt:
                consistent = True
                for i in range(m):
                    if (1.0 if z[i] > 0.0 else -1.0) != y[i]:
                        consistent = False
                        break
                if consistent:
                    halted = True
                    break
        return x, iters, trace, halted, 0, 0

    biht_core = biht_core_numba
else:
    biht_core_numba = None
    biht_core = biht_core_numpy
