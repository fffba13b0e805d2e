"""Seeded random streams for reproducible simulation.

Replication r of a run seeded with s always draws from the stream derived from
(s, r), so results do not depend on evaluation order or thread scheduling.
"""
from __future__ import annotations

import numpy as np

SEED_MASK = (1 << 64) - 1


class SeededRNG:
    """Wrapper around numpy's Generator for deterministic simulation."""

    def __init__(self, seed: int, spawn_key: tuple[int, ...] = ()):
        self._seed = int(seed) & SEED_MASK
        self._spawn_key = tuple(spawn_key)
        self._rng = np.random.default_rng(
            np.random.SeedSequence(entropy=self._seed, spawn_key=self._spawn_key)
        )

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def generator(self) -> np.random.Generator:
        return self._rng

    def random(self, size=None):
        return self._rng.random(size)

    def integers(self, high: int) -> int:
        """Uniform integer in [0, high)."""
        return int(self._rng.integers(high))

    def derive(self, index: int) -> SeededRNG:
        """Independent child stream for replication ``index``."""
        return SeededRNG(self._seed, self._spawn_key + (int(index),))


def replication_stream(seed: int, index: int) -> SeededRNG:
    return SeededRNG(seed).derive(index)
