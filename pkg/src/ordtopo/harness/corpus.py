"""Fixed poset corpora shared by the suite and the acceptance tests."""
from __future__ import annotations

from itertools import product
from typing import Iterator

from ..completions import SumSpec
from ..finspace import FinitePoset, enumerate_posets
from .checks import IRREDUCIBLE_FIBERS
from .rng import Rng, random_poset


def labelled_posets(max_size: int, min_size: int = 1) -> Iterator[FinitePoset]:
    for n in range(min_size, max_size + 1):
        yield from enumerate_posets(n)


def random_posets(seed: int, count: int, lo: int = 6, hi: int = 8) -> Iterator[FinitePoset]:
    rng = Rng(seed)
    for _ in range(count):
        size = rng.randint(lo, hi)
        yield random_poset(rng, size, rng.random())


def ershov_corpus(max_base: int = 3) -> Iterator[SumSpec]:
    """Every labelled base up to ``max_base`` points with every assignment of irreducible fibers."""
    for base in labelled_posets(max_base):
        for fibers in product(IRREDUCIBLE_FIBERS, repeat=base.size):
            yield SumSpec(base, fibers)
