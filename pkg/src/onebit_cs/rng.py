"""Deterministic, seedable random generation.

The generator is SplitMix64 (Vigna's reference constants) in counter form:
the n-th 64-bit word of a stream with key ``k`` is

    mix64(k + (n + 1) * GOLDEN)  (mod 2**64)

where ``mix64`` is the SplitMix64 finalizer, a bijection on 64-bit words.
Because the word sequence is a pure function of (key, index), blocks of
words can be produced vectorized in numpy while staying bit-identical to
scalar draws.

Sub-streams are derived by hashing the parent key with the sub-stream id;
the derivation is injective in the id for a fixed parent and does not
depend on how many words the parent has already produced.

Gaussian draws use the Marsaglia polar method, consuming words in pairs;
a trailing unpaired value at the end of a call is discarded so every call
consumes whole pairs.  The sequence of emitted Gaussians is a prefix
property of the word stream: the first n values do not depend on how many
were requested.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_U_GOLDEN = np.uint64(_GOLDEN)
_U_MIX1 = np.uint64(_MIX1)
_U_MIX2 = np.uint64(_MIX2)

# (w >> 11) * 2**-53 maps a 64-bit word to a double in [0, 1)
_INV_2_53 = 2.0 ** -53


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * _U_MIX1
    z = z ^ (z >> np.uint64(27))
    z = z * _U_MIX2
    return z ^ (z >> np.uint64(31))


@dataclass
class PrngStream:
    """One independently seeded stream of pseudo-random words.

    ``key`` is the stream identity, ``counter`` the number of words
    consumed so far.  Streams are single-owner: concurrent users must
    each hold their own derived sub-stream.
    """

    key: int
    counter: int = field(default=0)

    def clone(self) -> "PrngStream":
        return PrngStream(self.key, self.counter)


def prng_new(seed: int) -> PrngStream:
    """Create a master stream from an integer seed (0 permitted)."""
    if not isinstance(seed, (int, np.integer)):
        raise ParameterError(f"seed must be an integer, got {type(seed).__name__}")
    return PrngStream(key=_mix64(int(seed) & _MASK64))


def derive(stream: PrngStream, stream_id: int) -> PrngStream:
    """Derive sub-stream ``stream_id`` of ``stream``.

    Injective in stream_id for a fixed parent key, independent of the
    parent's draw position.
    """
    if stream_id < 0:
        raise ParameterError(f"stream_id must be non-negative, got {stream_id}")
    salt = _mix64(((stream_id + 1) * _GOLDEN) & _MASK64)
    return PrngStream(key=_mix64((stream.key + salt) & _MASK64))


def next_u64(stream: PrngStream) -> int:
    """Next raw 64-bit word of the stream."""
    stream.counter += 1
    return _mix64((stream.key + stream.counter * _GOLDEN) & _MASK64)


def _next_block(stream: PrngStream, count: int) -> np.ndarray:
    """Consume ``count`` words at once (vectorized, same words as next_u64)."""
    start = stream.counter
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    stream.counter = start + count
    return _mix64_array(np.uint64(stream.key & _MASK64) + idx * _U_GOLDEN)


def uniform(stream: PrngStream, count: int) -> np.ndarray:
    """``count`` doubles uniform on [0, 1)."""
    words = _next_block(stream, count)
    return (words >> np.uint64(11)).astype(np.float64) * _INV_2_53


def randint_below(stream: PrngStream, bound: int) -> int:
    """Uniform integer in [0, bound), rejection sampled (no modulo bias)."""
    if bound <= 0:
        raise ParameterError(f"bound must be positive, got {bound}")
    limit = (1 << 64) - ((1 << 64) % bound)
    while True:
        w = next_u64(stream)
        if w < limit:
            return w % bound


def index_subset(stream: PrngStream, n: int, k: int) -> np.ndarray:
    """k distinct indices from range(n), uniform over all C(n, k) subsets.

    Partial Fisher-Yates; the returned indices are sorted ascending.
    """
    if not 1 <= k <= n:
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    pool = np.arange(n, dtype=np.int64)
    for i in range(k):
        j = i + randint_below(stream, n - i)
        pool[i], pool[j] = pool[j], pool[i]
    picked = pool[:k]
    picked.sort()
    return picked


def gaussian(stream: PrngStream, count: int) -> np.ndarray:
    """``count`` i.i.d. standard normal draws via the polar method.

    Words are consumed in pairs mapped to (u, v) in [-1, 1)^2; pairs with
    u^2 + v^2 >= 1 or == 0 are rejected.  An accepted pair emits both of
    its transformed values in order; if ``count`` is odd, the second value
    of the final pair is discarded.
    """
    if count < 0:
        raise ParameterError(f"count must be non-negative, got {count}")
    out = np.empty(count, dtype=np.float64)
    filled = 0
    while filled < count:
        pairs_needed = (count - filled + 1) // 2
        # ~78.5% acceptance; oversample so one batch usually suffices
        batch = max(32, pairs_needed + (pairs_needed >> 2) + 8)
        start = stream.counter
        words = _next_block(stream, 2 * batch)
        u = (words[0::2] >> np.uint64(11)).astype(np.float64) * _INV_2_53 * 2.0 - 1.0
        v = (words[1::2] >> np.uint64(11)).astype(np.float64) * _INV_2_53 * 2.0 - 1.0
        s = u * u + v * v
        ok = (s < 1.0) & (s > 0.0)
        n_ok = int(np.count_nonzero(ok))
        if n_ok >= pairs_needed:
            # rewind past the pair that completes the request
            last = int(np.flatnonzero(ok)[pairs_needed - 1])
            stream.counter = start + 2 * (last + 1)
            keep = ok.copy()
            keep[last + 1:] = False
        else:
            keep = ok
        us, vs, ss = u[keep], v[keep], s[keep]
        f = np.sqrt(-2.0 * np.log(ss) / ss)
        z = np.empty(2 * us.size, dtype=np.float64)
        z[0::2] = us * f
        z[1::2] = vs * f
        take = min(z.size, count - filled)
        out[filled:filled + take] = z[:take]
        filled += take
    return out
