"""Reproducible random-number plumbing.

Every stochastic routine takes an explicit seed (int or SeedSequence).
Independent units of work (bootstrap replications, rolling windows,
sampling chunks) draw their seeds from ``spawn_seeds``, so results do not
depend on execution order or worker count: child k of a given parent seed
is always the same stream.
"""

from __future__ import annotations

import numpy as np

Seed = "int | np.random.SeedSequence | np.random.Generator"


def as_generator(seed) -> np.random.Generator:
    """Coerce an int / SeedSequence / Generator into a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.default_rng(seed)
    if seed is None:
        raise ValueError("seed is required; implicit entropy is not allowed")
    return np.random.default_rng(int(seed))


def spawn_seeds(seed, n: int) -> list[np.random.SeedSequence]:
    """Split ``seed`` into ``n`` independent child seeds (deterministic)."""
    if isinstance(seed, np.random.SeedSequence):
        return seed.spawn(n)
    return np.random.SeedSequence(int(seed)).spawn(n)
