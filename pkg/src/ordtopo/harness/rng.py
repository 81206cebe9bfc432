"""Seeded random generation of finite posets."""
from __future__ import annotations

import random

from ..finspace import FinitePoset

SEED_MASK = (1 << 64) - 1


class Rng:
    """A seeded generator that counts its draws.

    Backed by the Mersenne Twister of :mod:`random`, whose output for an
    integer seed is the same on every platform.
    """

    def __init__(self, seed: int):
        self.seed = seed & SEED_MASK
        self.counter = 0
        self._gen = random.Random(self.seed)

    def random(self) -> float:
        self.counter += 1
        return self._gen.random()

    def randint(self, lo: int, hi: int) -> int:
        self.counter += 1
        return self._gen.randint(lo, hi)

    def choice(self, seq):
        self.counter += 1
        return self._gen.choice(seq)

    def fork(self, label: int) -> Rng:
        """An independent stream derived from this seed and ``label``."""
        return Rng((self.seed * 1_000_003 + label) & SEED_MASK)


def random_poset(rng: Rng, size: int, edge_density: float) -> FinitePoset:
    """Coin-flip each forward edge ``i -> j`` (``i < j``) and take the transitive closure."""
    if size < 1:
        raise ValueError("size must be at least 1")
    if not 0.0 <= edge_density <= 1.0:
        raise ValueError("edge_density must lie in [0, 1]")
    up = [1 << x for x in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < edge_density:
                up[i] |= 1 << j
    # edges only go forward, so closing from the top down is enough
    for i in reversed(range(size)):
        acc = up[i]
        rest = acc & ~(1 << i)
        while rest:
            low = rest & -rest
            acc |= up[low.bit_length() - 1]
            rest ^= low
        up[i] = acc
    return FinitePoset(up)
