"""Seeded Erdos-Renyi sampling.

Reproducibility contract: the graph for ``(master, trial)`` depends on
nothing else.  The pair is mixed into a 64-bit stream key

    key = splitmix64(splitmix64(master) ^ (trial * 0x9E3779B97F4A7C15 mod 2**64))

which keys a Philox-4x64 counter-based generator (``numpy.random.Philox``).
One uniform double is drawn per vertex pair, in pair-index order, and the
pair is an edge iff the draw is ``< p``.  There is no global RNG state, so
trials can be sampled in any order or in parallel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidProbabilityError
from .graph import Graph, from_pair_mask, num_pairs

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def splitmix64_array(x: np.ndarray) -> np.ndarray:
    """Vectorised :func:`splitmix64` over ``uint64`` input."""
    with np.errstate(over="ignore"):
        z = x.astype(np.uint64) + np.uint64(_GOLDEN)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class SamplerSeed:
    master: int
    trial: int
    key: int

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=self.key))


def derive_trial_seed(master: int, trial: int) -> SamplerSeed:
    master &= _MASK64
    if trial < 0:
        raise ValueError("trial index must be non-negative")
    key = splitmix64(splitmix64(master) ^ ((trial * _GOLDEN) & _MASK64))
    return SamplerSeed(master, trial, key)


def trial_keys(master: int, trials: np.ndarray) -> np.ndarray:
    """Stream keys for many trial indices at once (same values as
    :func:`derive_trial_seed`)."""
    with np.errstate(over="ignore"):
        t = np.asarray(trials, dtype=np.uint64) * np.uint64(_GOLDEN)
    return splitmix64_array(np.uint64(splitmix64(master & _MASK64)) ^ t)


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise InvalidProbabilityError(f"edge probability {p} not in [0, 1]")
    return p


def sample_pair_mask(n: int, p: float, seed: SamplerSeed) -> np.ndarray:
    p = _check_p(p)
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    u = seed.generator().random(num_pairs(n))
    return u < p


def sample_gnp(n: int, p: float, seed: SamplerSeed) -> Graph:
    """Draw G(n, p).  ``p = 0`` and ``p = 1`` give the empty and complete graph."""
    return from_pair_mask(sample_pair_mask(n, p, seed), n)
