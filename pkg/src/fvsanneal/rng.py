"""Seeded random streams and reproducible seed derivation."""

from __future__ import annotations

import random

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """One splitmix64 finalizer step; maps any 64-bit value to a well-mixed one."""
    z = (x + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, index: int) -> int:
    """Derive the seed for sub-stream `index` from a master seed.

    Deterministic and well-spread: repetition i of a batch run, or layer i of a
    decomposition, gets stream derive_seed(master, i).
    """
    return splitmix64((master & _MASK64) ^ splitmix64(index & _MASK64))


class RngStream:
    """A seeded random stream. Identical seeds replay identical draw sequences.

    Thin wrapper around random.Random that keeps the originating seed
    available (solver results record it) and can spawn derived sub-streams.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._rng = random.Random(self.seed)

    def random(self) -> float:
        return self._rng.random()

    def randrange(self, *args) -> int:
        return self._rng.randrange(*args)

    def getrandbits(self, k: int) -> int:
        return self._rng.getrandbits(k)

    def choice(self, seq):
        return self._rng.choice(seq)

    def shuffle(self, seq) -> None:
        self._rng.shuffle(seq)

    def sample(self, population, k: int):
        return self._rng.sample(population, k)

    def spawn(self, index: int) -> "RngStream":
        """Independent sub-stream, deterministic in (self.seed, index)."""
        return RngStream(derive_seed(self.seed, index))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed})"
