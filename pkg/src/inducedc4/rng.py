"""Counter-based deterministic random values.

Every random draw in this package is ``splitmix64(seed, counter)`` where the
mix is the standard SplitMix64 finalizer over ``seed + (counter+1) * GOLDEN``
(all arithmetic mod 2**64):

    z  = seed + (counter + 1) * 0x9E3779B97F4A7C15
    z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27;  z *= 0x94D049BB133111EB
    z ^= z >> 31

Draws are a pure function of ``(seed, counter)``, so corpora are bit-stable
across platforms and easy to reproduce in any language.  Generators that need
several independent streams derive substream seeds with `substream`.

Bounded draws use plain modulo: ``rand_below(seed, ctr, k) = draw % k``.  The
modulo bias is below 2**-40 for every bound used here and, more importantly,
the formula is part of the documented output contract.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def splitmix64(seed: int, counter: int) -> int:
    z = (seed + (counter + 1) * _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def splitmix64_array(seed: int, counters: np.ndarray) -> np.ndarray:
    """Vectorized `splitmix64` over an array of counters."""
    with np.errstate(over="ignore"):
        z = (np.uint64(seed) + (counters.astype(np.uint64) + np.uint64(1)) * np.uint64(_GOLDEN))
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))


def substream(seed: int, tag: int) -> int:
    """Seed for an independent named stream."""
    return splitmix64(seed, 0x5EED_0000 + tag)


def rand_below(seed: int, counter: int, bound: int) -> int:
    """Deterministic draw in [0, bound)."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    return splitmix64(seed, counter) % bound
