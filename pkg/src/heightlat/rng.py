"""Counter-based randomness keyed by (seed, epoch, vertex).

Exact sampling by coupling from the past must re-read the randomness of past
epochs, so nothing here is stateful: every uniform is a pure hash of its key.
The hash is the splitmix64 finalizer applied twice, once to derive an epoch
key from the seed and once to derive the per-vertex word from the epoch key.
The scalar and vectorized paths compute bit-identical words.
"""
from __future__ import annotations

import numpy as np

_M64 = (1 << 64) - 1
_GOLD = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_NP_GOLD = np.uint64(_GOLD)
_NP_MIX1 = np.uint64(_MIX1)
_NP_MIX2 = np.uint64(_MIX2)

_U53_SCALE = 2.0 ** -53


def mix64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    z &= _M64
    z = ((z ^ (z >> 30)) * _MIX1) & _M64
    z = ((z ^ (z >> 27)) * _MIX2) & _M64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * _NP_MIX1
    z = z ^ (z >> np.uint64(27))
    z = z * _NP_MIX2
    return z ^ (z >> np.uint64(31))


def derive_seed(master: int, i: int) -> int:
    """Child seed number i of a master seed; used to fan out batches."""
    return mix64(mix64(master & _M64) ^ ((i + 1) * _GOLD & _M64))


def vertex_keys(n: int) -> np.ndarray:
    """Pre-multiplied per-vertex key increments for the vectorized path."""
    return ((np.arange(1, n + 1, dtype=np.uint64)) * _NP_GOLD)


class RandomSource:
    """Stateless generator: same (seed, t, v) always yields the same uniform."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._base = mix64(self.seed & _M64)

    def epoch_key(self, t: int) -> int:
        return mix64((self._base + (t & _M64) * _GOLD) & _M64)

    def word(self, t: int, v: int) -> int:
        """Raw 64-bit word for epoch t and vertex index v."""
        return mix64((self.epoch_key(t) + (v + 1) * _GOLD) & _M64)

    def uniform(self, t: int, v: int) -> float:
        """Uniform in [0, 1) with 53 significant bits."""
        return (self.word(t, v) >> 11) * _U53_SCALE

    def coin(self, t: int, v: int) -> bool:
        """Top bit of the word; equals uniform(t, v) >= 0.5 exactly."""
        return bool(self.word(t, v) >> 63)

    def words_for_epoch(self, t: int, vkeys: np.ndarray) -> np.ndarray:
        """Vectorized words; vkeys comes from :func:`vertex_keys`."""
        key = np.uint64(self.epoch_key(t))
        return _mix64_array(vkeys + key)

    def coins_for_epoch(self, t: int, vkeys: np.ndarray) -> np.ndarray:
        return self.words_for_epoch(t, vkeys) >> np.uint64(63)

    def spawn(self, i: int) -> "RandomSource":
        return RandomSource(derive_seed(self.seed, i))

    def __repr__(self):
        return f"RandomSource(seed={self.seed})"
