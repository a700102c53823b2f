"""
Seeded random streams with named, independent sub-streams.
"""

import zlib

import numpy as np


class RandomStream:
    """
    A PCG64 generator keyed by (seed, name path).

    Forking by name gives each module its own stream, so adding draws in
    one module never shifts the draws of another.
    """

    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        if seed < 0:
            raise ValueError("seed must be non-negative")
        self.seed = seed
        self._path = path
        sequence = np.random.SeedSequence(entropy=seed, spawn_key=path)
        self._rng = np.random.Generator(np.random.PCG64(sequence))

    def fork(self, name: str) -> "RandomStream":
        return RandomStream(self.seed, self._path + (zlib.crc32(name.encode("utf-8")),))

    def random(self) -> float:
        """Uniform draw in [0, 1)."""
        return float(self._rng.random())

    def uniform(self, low: float, high: float) -> float:
        return float(self._rng.uniform(low, high))

    def integers(self, low: int, high: int) -> int:
        """Integer draw in [low, high)."""
        return int(self._rng.integers(low, high))
