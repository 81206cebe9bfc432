"""Finite lattices: recognition, join tables, and isomorphism-free enumeration.

Lattices are finite posets with a least element and all binary joins.  The
enumerator grows lattices one atom at a time and removes isomorphic copies
with nauty certificates (via ``pynauty``).
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterator, Sequence

import pynauty

from .errors import NotALattice
from .finspace import FinitePoset, Mask, bits



class FiniteLattice:
    """A finite lattice over a :class:`FinitePoset`, with a precomputed join table.

    ``join_table`` is flat: the join of ``x`` and ``y`` is ``join_table[x * size + y]``.
    """

    def __init__(self, poset: FinitePoset, join_table: bytes | None = None):
        self.poset = poset
        n = poset.size
        if n == 0:
            raise NotALattice("the empty poset is not a lattice")
        bottom = poset.least(poset.full)
        top = poset.greatest(poset.full)
        if bottom is None or top is None:
            raise NotALattice("no least or no greatest element")
        self.bottom = bottom
        self.top = top
        if join_table is None:
            join_table = _join_table(poset.up)
            if join_table is None:
                raise NotALattice("some pair of elements has no join")
        self.join_table = join_table

    @property
    def size(self) -> int:
        return self.poset.size

    def leq(self, x: int, y: int) -> bool:
        return self.poset.leq(x, y)

    def join(self, x: int, y: int) -> int:
        return self.join_table[x * self.poset.size + y]

    def join_all(self, mask: Mask) -> int:
        """Join of a set of elements; the bottom for the empty set."""
        acc = self.bottom
        t = self.join_table
        n = self.poset.size
        for x in bits(mask):
            acc = t[acc * n + x]
        return acc

    def meet(self, x: int, y: int) -> int:
        z = self.poset.greatest(self.poset.down[x] & self.poset.down[y])
        assert z is not None
        return z

    @cached_property
    def downsets(self) -> tuple[Mask, ...]:
        return self.poset.closed_sets

    def __repr__(self):
        return f"FiniteLattice(size={self.size})"


def is_lattice(p: FinitePoset) -> bool:
    try:
        FiniteLattice(p)
    except NotALattice:
        return False
    return True


def _atom_key(up: Sequence[Mask], x: int) -> tuple[int, int]:
    return (up[x].bit_count(), sum(up[y].bit_count() for y in bits(up[x])))


def _downs(up: Sequence[Mask]) -> list[Mask]:
    n = len(up)
    down = [0] * n
    for x in range(n):
        for y in bits(up[x]):
            down[y] |= 1 << x
    return down


def _join_table(up: Sequence[Mask]) -> bytes | None:
    n = len(up)
    join = bytearray(n * n)
    for x in range(n):
        for y in range(x, n):
            common = up[x] & up[y]
            for z in bits(common):
                if up[z] & common == common:
                    join[x * n + y] = join[y * n + x] = z
                    break
            else:
                return None
    return bytes(join)


def _extensions(up: Sequence[Mask], join: bytes) -> Iterator[tuple[list[Mask], bytes]]:
    """Lattices obtained from ``up`` (bottom 0) by adding one new atom.

    The new atom's strict up-set ``U`` is the up-closure of a nonempty
    antichain avoiding the bottom; the result is a lattice iff every ``x``
    outside ``U`` has a least element in ``U & up(x)``, i.e. the joins of
    ``x`` with the generators have a minimum, which is then the join of
    ``x`` with the new atom.  Only children in which the new atom carries
    the largest atom key are produced; every lattice has such an atom, so no
    isomorphism class is lost.
    """
    n = len(up)
    downs = _downs(up)
    atoms = [x for x in range(1, n) if downs[x] == 1 | 1 << x]
    best = max((_atom_key(up, x) for x in atoms), default=(0, 0))
    sizes = [u.bit_count() for u in up]
    comparable = [up[x] | downs[x] for x in range(n)]
    candidates = []

    def rec(start: int, chosen: list[int], upset: Mask, blocked: Mask):
        if chosen:
            candidates.append((tuple(chosen), upset))
        for x in range(start, n):
            if not blocked >> x & 1:
                chosen.append(x)
                rec(x + 1, chosen, upset | up[x], blocked | comparable[x])
                chosen.pop()

    rec(1, [], 0, 1)
    m = n + 1
    for gens, upset in candidates:
        k = upset.bit_count() + 1
        if k < best[0] or (k == best[0] and k + sum(sizes[y] for y in bits(upset)) < best[1]):
            continue
        with_new = [n] + [0] * (n - 1)
        for x in range(1, n):
            if upset >> x & 1:
                with_new[x] = x
                continue
            base = x * n
            lo = join[base + gens[0]]
            for g in gens[1:]:
                j = join[base + g]
                if up[j] >> lo & 1:
                    lo = j
            low_up = up[lo]
            for g in gens[1:]:
                if not low_up >> join[base + g] & 1:
                    break
            else:
                with_new[x] = lo
                continue
            break
        else:
            new_up = list(up)
            new_up[0] |= 1 << n
            new_up.append(upset | 1 << n)
            table = bytearray(m * m)
            for x in range(n):
                table[x * m:x * m + n] = join[x * n:x * n + n]
                table[x * m + n] = with_new[x]
            table[n * m:n * m + n] = bytes(with_new)
            table[n * m + n] = n
            yield new_up, bytes(table)


def _certificate(up: Sequence[Mask]) -> bytes:
    n = len(up)
    adj = {x: [y for y in bits(up[x]) if y != x] for x in range(n)}
    return pynauty.certificate(pynauty.Graph(n, directed=True, adjacency_dict=adj))


def lattice_levels(max_size: int) -> Iterator[list[tuple[tuple[Mask, ...], bytes]]]:
    """Yield, for sizes 1..max_size, one ``(up, join_table)`` per lattice isomorphism class.

    Element 0 is the bottom in every yielded lattice.
    """
    if max_size < 1:
        return
    yield [((1,), bytes([0]))]
    if max_size < 2:
        return
    level = [((3, 2), bytes([0, 1, 1, 1]))]
    yield level
    for _ in range(3, max_size + 1):
        seen: set[bytes] = set()
        nxt = []
        for up, join in level:
            for child, table in _extensions(up, join):
                c = _certificate(child)
                if c not in seen:
                    seen.add(c)
                    nxt.append((tuple(child), table))
        level = nxt
        yield level


def enumerate_lattices(max_size: int, min_size: int = 1) -> Iterator[FiniteLattice]:
    """All lattices with ``min_size..max_size`` elements, up to isomorphism."""
    for size, level in enumerate(lattice_levels(max_size), start=1):
        if size < min_size:
            continue
        for up, join in level:
            yield FiniteLattice(FinitePoset(up), join)
