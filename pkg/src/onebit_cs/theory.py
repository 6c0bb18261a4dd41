"""Closed-form bounds: reconstruction floor, sample complexities,
concentration and noise-flip rates, and the orthant/quantization-point
counts.

All logarithms are natural.  Combinatorial counts use exact Python
integer arithmetic (arbitrary precision, so there is no 64-bit overflow
to guard against).  Ceilings are applied only as the final step of each
sample-complexity formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ParameterError

_BISECTION_TOL = 1e-9


@dataclass
class BoundReport:
    """One evaluated bound, as emitted by the ``bounds`` CLI subcommand."""

    name: str
    inputs: dict = field(default_factory=dict)
    value: float | int = 0
    formula_citation: str = ""


def _check_sparsity_pair(K: int, N: int) -> None:
    if K < 1:
        raise ParameterError(f"K must be >= 1, got {K}")
    if N < K:
        raise ParameterError(f"need N >= K, got N={N}, K={K}")


def lower_bound_error(K: int, M: int) -> float:
    """Best achievable worst-case reconstruction error: K / (2eM + 2K^(3/2))."""
    if K < 1 or M < 1:
        raise ParameterError(f"K and M must be >= 1, got K={K}, M={M}")
    return K / (2.0 * math.e * M + 2.0 * K ** 1.5)


def measurements_for_consistency(K: int, N: int, eps_o: float, eta: float) -> int:
    """Measurements so that, with probability 1-eta, consistent sparse pairs
    are within eps_o: ceil((2/eps_o)(2K ln N + 4K ln(17/eps_o) + ln(1/eta)))."""
    _check_sparsity_pair(K, N)
    if eps_o <= 0:
        raise ParameterError(f"eps_o must be positive, got {eps_o}")
    if not 0 < eta <= 1:
        raise ParameterError(f"eta must be in (0, 1], got {eta}")
    rhs = (2.0 / eps_o) * (2.0 * K * math.log(N)
                           + 4.0 * K * math.log(17.0 / eps_o)
                           + math.log(1.0 / eta))
    return math.ceil(rhs)


def _bese_rhs(K: int, N: int, eps: float, eta: float) -> float:
    return (2.0 / eps ** 2) * (K * math.log(N)
                               + 2.0 * K * math.log(35.0 / eps)
                               + math.log(2.0 / eta))


def measurements_for_bese(K: int, N: int, eps: float, eta: float) -> int:
    """Measurements for a binary eps-stable embedding of order K:
    ceil((2/eps^2)(K ln N + 2K ln(35/eps) + ln(2/eta))).

    eta up to 2 is accepted: eta = 2 zeroes the ln(2/eta) term, an
    algebraic edge used by the K=1, N=2 reference value.
    """
    _check_sparsity_pair(K, N)
    if eps <= 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    if not 0 < eta <= 2:
        raise ParameterError(f"eta must be in (0, 2], got {eta}")
    return math.ceil(_bese_rhs(K, N, eps, eta))


def bese_epsilon_given_m(K: int, N: int, M: int, eta: float) -> float:
    """Smallest eps in (0, 1] whose embedding sample complexity is covered
    by M measurements, found by bisection to 1e-9; 1.0 when even eps = 1
    is not covered."""
    _check_sparsity_pair(K, N)
    if M < 1:
        raise ParameterError(f"M must be >= 1, got {M}")
    if not 0 < eta <= 2:
        raise ParameterError(f"eta must be in (0, 2], got {eta}")
    if _bese_rhs(K, N, 1.0, eta) > M:
        return 1.0
    lo = _BISECTION_TOL
    if _bese_rhs(K, N, lo, eta) <= M:
        return lo
    hi = 1.0
    while hi - lo > _BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if _bese_rhs(K, N, mid, eta) <= M:
            hi = mid
        else:
            lo = mid
    return hi


def concentration_failure_prob(eps: float, M: int) -> float:
    """Probability that one random matrix misses the +-eps Hamming/angle
    band for a fixed pair: min(1, 2 exp(-2 eps^2 M))."""
    if eps < 0:
        raise ParameterError(f"eps must be non-negative, got {eps}")
    if M < 1:
        raise ParameterError(f"M must be >= 1, got {M}")
    return min(1.0, 2.0 * math.exp(-2.0 * eps * eps * M))


def expected_flip_bound(sigma: float, norm_x: float) -> float:
    """Upper bound on the expected fraction of sign flips caused by
    pre-quantization Gaussian noise: (1/2) sigma / sqrt(norm_x^2 + sigma^2)."""
    if sigma < 0 or norm_x < 0:
        raise ParameterError("sigma and norm_x must be non-negative")
    if sigma == 0 and norm_x == 0:
        raise ParameterError("sigma and norm_x cannot both be zero")
    if sigma == 0:
        return 0.0
    return 0.5 * sigma / math.sqrt(norm_x * norm_x + sigma * sigma)


def _check_orthant_args(M: int, K: int) -> None:
    if not 1 <= K <= M:
        raise ParameterError(f"need 1 <= K <= M, got K={K}, M={M}")


def orthant_bound_tight(M: int, K: int) -> int:
    """Maximum orthants of R^M intersected by a K-dimensional subspace:
    2 * sum_{l=0}^{K-1} C(M-1, l), exact."""
    _check_orthant_args(M, K)
    return 2 * sum(math.comb(M - 1, l) for l in range(K))


def orthant_bound_simple(M: int, K: int) -> int:
    """Closed-form orthant bound floor(2^K C(M,K) / (M-K+1)), exact."""
    _check_orthant_args(M, K)
    return (2 ** K * math.comb(M, K)) // (M - K + 1)


def quantization_points_bound(N: int, M: int, K: int) -> int:
    """Quantization points reachable by K-sparse signals:
    2^K C(N,K) C(M,K), exact."""
    if not 1 <= K <= min(N, M):
        raise ParameterError(f"need 1 <= K <= min(N, M), got K={K}, N={N}, M={M}")
    return 2 ** K * math.comb(N, K) * math.comb(M, K)


def noisy_error_bound(sigma: float, norm_x: float, gamma: float, eps: float) -> float:
    """Angular error bound for a consistent sparse decoder under
    pre-quantization noise: sigma/(2 norm_x) + gamma + eps."""
    if norm_x <= 0:
        raise ParameterError(f"norm_x must be positive, got {norm_x}")
    if sigma < 0 or gamma < 0 or eps < 0:
        raise ParameterError("sigma, gamma and eps must be non-negative")
    return sigma / (2.0 * norm_x) + gamma + eps


# name -> (function, ordered parameter names, integer-valued parameter names,
#          formula citation) used by the bounds CLI
BOUND_REGISTRY = {
    "eopt": (lower_bound_error, ("k", "m"), ("k", "m"),
             "K / (2*e*M + 2*K^(3/2))"),
    "m-consistency": (measurements_for_consistency, ("k", "n", "eps_o", "eta"),
                      ("k", "n"),
                      "ceil((2/eps_o)*(2*K*ln(N) + 4*K*ln(17/eps_o) + ln(1/eta)))"),
    "m-bese": (measurements_for_bese, ("k", "n", "eps", "eta"), ("k", "n"),
               "ceil((2/eps^2)*(K*ln(N) + 2*K*ln(35/eps) + ln(2/eta)))"),
    "eps-bese": (bese_epsilon_given_m, ("k", "n", "m", "eta"), ("k", "n", "m"),
                 "min eps in (0,1] with M >= (2/eps^2)*(K*ln(N) + 2*K*ln(35/eps)"
                 " + ln(2/eta)); bisection to 1e-9"),
    "flip-bound": (expected_flip_bound, ("sigma", "norm_x"), (),
                   "(1/2)*sigma/sqrt(norm_x^2 + sigma^2)"),
    "orthant-tight": (orthant_bound_tight, ("m", "k"), ("m", "k"),
                      "2*sum_{l=0..K-1} C(M-1, l)"),
    "orthant-simple": (orthant_bound_simple, ("m", "k"), ("m", "k"),
                       "floor(2^K * C(M,K) / (M-K+1))"),
    "qpoints": (quantization_points_bound, ("n", "m", "k"), ("n", "m", "k"),
                "2^K * C(N,K) * C(M,K)"),
    "noisy-bound": (noisy_error_bound, ("sigma", "norm_x", "gamma", "eps"), (),
                    "sigma/(2*norm_x) + gamma + eps"),
    "conc-fail": (concentration_failure_prob, ("eps", "m"), ("m",),
                  "min(1, 2*exp(-2*eps^2*M))"),
}


def evaluate_bound(name: str, params: dict) -> BoundReport:
    """Evaluate a named bound from a key->value parameter map."""
    if name not in BOUND_REGISTRY:
        valid = ", ".join(sorted(BOUND_REGISTRY))
        raise ParameterError(f"unknown bound {name!r} (expected one of {valid})")
    func, order, int_params, citation = BOUND_REGISTRY[name]
    missing = [p for p in order if p not in params]
    extra = [p for p in params if p not in order]
    if missing or extra:
        raise ParameterError(
            f"bound {name!r} takes parameters {', '.join(order)}; "
            f"missing {missing or 'none'}, unexpected {extra or 'none'}")
    args = []
    for p in order:
        v = params[p]
        if p in int_params:
            if float(v) != int(v):
                raise ParameterError(f"parameter {p} must be an integer, got {v}")
            args.append(int(v))
        else:
            args.append(float(v))
    value = func(*args)
    return BoundReport(name=name, inputs=dict(zip(order, args)), value=value,
                       formula_citation=citation)
