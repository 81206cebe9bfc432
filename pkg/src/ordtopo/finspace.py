"""Finite T0 spaces, represented by their specialization posets.

Every finite topology is the Alexandrov topology of its specialization
order, so a finite T0 space is carried around as a :class:`FinitePoset`.
Element sets are ``int`` bitmasks over the identifiers ``0..size-1`` (bit
``x`` set means ``x`` is a member).  Families of sets are tuples of masks in
increasing integer order, which keeps every enumeration deterministic.

Conventions: the empty set is a closed set (member of Gamma) and a compact
saturated set (member of Q); filtered families used for KF-sets must have
nonempty members.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

import numpy as np
import pynauty

from .errors import (
    CarrierTooLarge,
    EmptyFamily,
    EmptyMember,
    InvalidFamily,
    InvalidPoset,
    InvalidTopology,
    InvariantViolation,
    NotT0,
    OutOfRange,
    UnknownPredicate,
)

Mask = int

# full enumeration of Gamma(X) is refused beyond this many points
MAX_CARRIER = 20
# closure lookup tables are built up to this size (2**n entries)
TABLE_LIMIT = 12
# families with at most this many members are quantified exhaustively
# (every subfamily); larger ones use the finite least/greatest-member lemma
EXHAUSTIVE_FAMILY_LIMIT = 10


def _bits_scan(mask: Mask) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# masks below this are answered from a precomputed table (hot path)
_SMALL_MASKS = 1 << 13
_BITS_TABLE = [tuple(_bits_scan(m)) for m in range(_SMALL_MASKS)]


def bits(mask: Mask) -> Iterable[int]:
    """The identifiers in ``mask`` in increasing order."""
    if 0 <= mask < _SMALL_MASKS:
        return _BITS_TABLE[mask]
    return _bits_scan(mask)


def mask_of(xs: Iterable[int]) -> Mask:
    m = 0
    for x in xs:
        m |= 1 << x
    return m


def submasks(mask: Mask) -> Iterator[Mask]:
    """All subsets of ``mask``, from ``mask`` itself down to 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _closure_table(gen: Sequence[Mask]) -> list[Mask]:
    n = len(gen)
    table = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        table[m] = table[m ^ low] | gen[low.bit_length() - 1]
    return table


class Diagnostic(NamedTuple):
    axiom: str
    witness: tuple

    def __str__(self):
        return f"{self.axiom} fails at {self.witness}"


def validate_poset(leq: Sequence[Sequence[bool]]) -> list[Diagnostic]:
    """Check the partial-order axioms on an ``n x n`` truth table.

    Returns one diagnostic per violated axiom, carrying the first witness in
    canonical (lexicographic) order; an empty list means the table is a
    partial order.
    """
    n = len(leq)
    if any(len(row) != n for row in leq):
        raise ValueError("relation table must be square")
    out = []
    for x in range(n):
        if not leq[x][x]:
            out.append(Diagnostic("reflexivity", (x,)))
            break
    for x, y in combinations(range(n), 2):
        if leq[x][y] and leq[y][x]:
            out.append(Diagnostic("antisymmetry", (x, y)))
            break
    found = None
    for x in range(n):
        for y in range(n):
            if not leq[x][y]:
                continue
            for z in range(n):
                if leq[y][z] and not leq[x][z]:
                    found = (x, y, z)
                    break
            if found:
                break
        if found:
            break
    if found:
        out.append(Diagnostic("transitivity", found))
    return out


class FinitePoset:
    """An immutable finite partial order on ``0..size-1``.

    ``up[x]`` is the mask of ``{y : x <= y}`` and ``down[x]`` the mask of
    ``{y : y <= x}``.  ``labels`` is optional display data and takes no part
    in equality.
    """

    def __init__(self, up: Sequence[Mask], labels: Sequence | None = None):
        self.up = tuple(up)
        n = len(self.up)
        down = [0] * n
        for x, u in enumerate(self.up):
            for y in bits(u):
                down[y] |= 1 << x
        self.down = tuple(down)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("labels must match the carrier size")

    # construction

    @classmethod
    def from_leq(cls, leq: Sequence[Sequence[bool]], labels=None) -> FinitePoset:
        diags = validate_poset(leq)
        if diags:
            raise InvalidPoset(diags)
        return cls([mask_of(y for y, v in enumerate(row) if v) for row in leq], labels)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]], labels=None) -> FinitePoset:
        """Reflexive-transitive closure of ``pairs``; raises on cycles."""
        up = [1 << x for x in range(n)]
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise OutOfRange(f"pair {(x, y)} outside 0..{n - 1}")
            up[x] |= 1 << y
        for k in range(n):
            bk = 1 << k
            for i in range(n):
                if up[i] & bk:
                    up[i] |= up[k]
        for x in range(n):
            for y in bits(up[x] & ~(1 << x)):
                if up[y] >> x & 1:
                    raise InvalidPoset([Diagnostic("antisymmetry", (min(x, y), max(x, y)))])
        return cls(up, labels)

    @classmethod
    def chain(cls, n: int) -> FinitePoset:
        return cls([((1 << n) - 1) & ~((1 << x) - 1) for x in range(n)])

    @classmethod
    def antichain(cls, n: int) -> FinitePoset:
        return cls([1 << x for x in range(n)])

    # basic queries

    @property
    def size(self) -> int:
        return len(self.up)

    @property
    def full(self) -> Mask:
        return (1 << len(self.up)) - 1

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.up[x] >> y & 1)

    def leq_table(self) -> list[list[bool]]:
        n = self.size
        return [[bool(self.up[x] >> y & 1) for y in range(n)] for x in range(n)]

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs ``(x, y)`` with ``x < y`` and nothing strictly between."""
        out = []
        for x in range(self.size):
            above = self.up[x] & ~(1 << x)
            for y in bits(above):
                between = above & self.down[y] & ~(1 << y)
                if not between:
                    out.append((x, y))
        return out

    def label(self, x: int):
        return self.labels[x] if self.labels is not None else x

    def check_mask(self, mask: Mask) -> Mask:
        if mask < 0 or mask >> self.size:
            raise OutOfRange(f"element set {bin(mask)} has identifiers outside 0..{self.size - 1}")
        return mask

    def __eq__(self, other):
        return isinstance(other, FinitePoset) and self.up == other.up

    def __hash__(self):
        return hash(self.up)

    def __repr__(self):
        return f"FinitePoset(size={self.size}, covers={self.covers()})"

    # closures

    @cached_property
    def _down_table(self):
        return _closure_table(self.down) if self.size <= TABLE_LIMIT else None

    @cached_property
    def _up_table(self):
        return _closure_table(self.up) if self.size <= TABLE_LIMIT else None

    @cached_property
    def closure_array(self) -> np.ndarray:
        """Down-closure of every mask, as an array indexed by mask."""
        t = self._down_table
        if t is None:
            raise CarrierTooLarge(f"closure tables stop at {TABLE_LIMIT} points")
        return np.array(t, dtype=np.int64)

    def closure(self, mask: Mask) -> Mask:
        """Down-closure, which is the topological closure in a finite space."""
        t = self._down_table
        if t is not None:
            return t[mask]
        out = 0
        for x in bits(mask):
            out |= self.down[x]
        return out

    def saturation(self, mask: Mask) -> Mask:
        t = self._up_table
        if t is not None:
            return t[mask]
        out = 0
        for x in bits(mask):
            out |= self.up[x]
        return out

    def is_closed(self, mask: Mask) -> bool:
        return self.closure(mask) == mask

    def is_saturated(self, mask: Mask) -> bool:
        return self.saturation(mask) == mask

    def maximal(self, mask: Mask) -> Mask:
        return mask_of(x for x in bits(mask) if self.up[x] & mask == 1 << x)

    def minimal(self, mask: Mask) -> Mask:
        return mask_of(x for x in bits(mask) if self.down[x] & mask == 1 << x)

    def greatest(self, mask: Mask) -> int | None:
        for x in bits(mask):
            if self.down[x] & mask == mask:
                return x
        return None

    def least(self, mask: Mask) -> int | None:
        for x in bits(mask):
            if self.up[x] & mask == mask:
                return x
        return None

    # enumerations

    @cached_property
    def antichains(self) -> tuple[Mask, ...]:
        """All antichains (including the empty one), sorted."""
        n = self.size
        if n > MAX_CARRIER:
            raise CarrierTooLarge(f"carrier of size {n} exceeds {MAX_CARRIER}")
        comparable = [self.up[x] | self.down[x] for x in range(n)]
        out = []

        def extend(start, chosen, blocked):
            out.append(chosen)
            for x in range(start, n):
                if not blocked >> x & 1:
                    extend(x + 1, chosen | 1 << x, blocked | comparable[x])

        extend(0, 0, 0)
        return tuple(sorted(out))

    @cached_property
    def closed_sets(self) -> tuple[Mask, ...]:
        """Gamma(X): every down-closed set, generated from its antichain of maxima."""
        return tuple(sorted(self.closure(a) for a in self.antichains))

    @cached_property
    def saturated_sets(self) -> tuple[Mask, ...]:
        return tuple(sorted(self.saturation(a) for a in self.antichains))

    @cached_property
    def closed_array(self) -> np.ndarray:
        return np.array(self.closed_sets, dtype=np.int64)

    @cached_property
    def closed_lower_covers(self) -> tuple[np.ndarray, np.ndarray]:
        """Index pairs ``(i, j)`` into ``closed_sets`` with ``closed_sets[j]`` a lower cover of ``closed_sets[i]``."""
        pos = {a: i for i, a in enumerate(self.closed_sets)}
        upper, lower = [], []
        for i, a in enumerate(self.closed_sets):
            for m in bits(self.maximal(a)):
                upper.append(i)
                lower.append(pos[a & ~(1 << m)])
        return np.array(upper, dtype=np.intp), np.array(lower, dtype=np.intp)

    @cached_property
    def closed_by_size(self) -> tuple[Mask, ...]:
        return tuple(sorted(self.closed_sets, key=lambda m: (m.bit_count(), m)))

    def induced(self, keep: Mask) -> FinitePoset:
        """Subposet on the identifiers in ``keep``, renumbered in increasing order."""
        idx = list(bits(keep))
        pos = {x: i for i, x in enumerate(idx)}
        up = [mask_of(pos[y] for y in bits(self.up[x] & keep)) for x in idx]
        labels = [self.label(x) for x in idx] if self.labels is not None else None
        return FinitePoset(up, labels)

    def relabel(self, perm: Sequence[int]) -> FinitePoset:
        """Image under the bijection ``x -> perm[x]``."""
        n = self.size
        up = [0] * n
        for x in range(n):
            up[perm[x]] = mask_of(perm[y] for y in bits(self.up[x]))
        return FinitePoset(up)

    def canonical_form(self) -> tuple[Mask, ...]:
        """Lexicographically least relabelled ``up`` tuple (brute force, small carriers)."""
        n = self.size
        if n > 7:
            raise CarrierTooLarge("canonical_form is brute force; carrier must be <= 7")
        return min(self.relabel(p).up for p in permutations(range(n)))


def certificate(up: Sequence[Mask]) -> bytes:
    """Isomorphism certificate (nauty) of a finite order given by its up-masks."""
    n = len(up)
    adj = {x: [y for y in bits(up[x]) if y != x] for x in range(n)}
    return pynauty.certificate(pynauty.Graph(n, directed=True, adjacency_dict=adj))


def enumerate_posets(n: int, up_to_iso: bool = False) -> Iterator[FinitePoset]:
    """All partial orders on ``0..n-1`` (labelled), or one per isomorphism class.

    Element ``k`` is added to each poset on ``0..k-1`` by choosing the down-set
    strictly below it and the up-set strictly above it; every labelled poset
    arises exactly once.
    """
    if up_to_iso:
        seen = set()
        for p in enumerate_posets(n):
            key = certificate(p.up)
            if key not in seen:
                seen.add(key)
                yield p
        return

    def grow(up: list[Mask], k: int):
        if k == n:
            yield FinitePoset(up)
            return
        p = FinitePoset(up)
        for below in p.closed_sets:
            common = p.full
            for d in bits(below):
                common &= p.up[d]
            for above in p.saturated_sets:
                if above & below or above & ~common:
                    continue
                new = list(up)
                for d in bits(below):
                    new[d] |= 1 << k
                new.append((1 << k) | above)
                yield from grow(new, k + 1)

    yield from grow([], 0)


# topologies


@dataclass(frozen=True)
class FiniteTopology:
    """A topology on ``0..size-1`` given by its family of open masks."""

    size: int
    opens: frozenset

    def problems(self) -> list[str]:
        full = (1 << self.size) - 1
        out = []
        if 0 not in self.opens:
            out.append("empty set is not open")
        if full not in self.opens:
            out.append("carrier is not open")
        for u in self.opens:
            if u < 0 or u >> self.size:
                out.append(f"open {bin(u)} leaves the carrier")
                break
        for u, v in combinations(sorted(self.opens), 2):
            if u | v not in self.opens:
                out.append(f"union of {bin(u)} and {bin(v)} is not open")
                break
            if u & v not in self.opens:
                out.append(f"intersection of {bin(u)} and {bin(v)} is not open")
                break
        return out

    def neighbourhood(self, x: int) -> Mask:
        """Smallest open set containing ``x``."""
        out = (1 << self.size) - 1
        for u in self.opens:
            if u >> x & 1:
                out &= u
        return out

    def is_t0(self) -> bool:
        nbhds = [self.neighbourhood(x) for x in range(self.size)]
        return len(set(nbhds)) == self.size

    def closure(self, mask: Mask) -> Mask:
        full = (1 << self.size) - 1
        outside = 0
        for u in self.opens:
            if not u & mask:
                outside |= u
        return full & ~outside


def specialization_order(t: FiniteTopology) -> FinitePoset:
    """``x <= y`` iff ``x`` lies in the closure of ``{y}``."""
    bad = t.problems()
    if bad:
        raise InvalidTopology("; ".join(bad))
    n = t.size
    up = [0] * n
    for y in range(n):
        cl = t.closure(1 << y)
        for x in bits(cl):
            up[x] |= 1 << y
    for x, y in combinations(range(n), 2):
        if up[x] >> y & 1 and up[y] >> x & 1:
            raise NotT0(f"points {x} and {y} have the same neighbourhoods")
    return FinitePoset(up)


def alexandrov_topology(p: FinitePoset) -> FiniteTopology:
    """All up-sets: the only topology on a finite set with this specialization order."""
    return FiniteTopology(p.size, frozenset(p.saturated_sets))


# closures and elementary predicates


def closure(p: FinitePoset, s: Mask) -> Mask:
    return p.closure(p.check_mask(s))


def is_directed(p: FinitePoset, s: Mask) -> bool:
    """Nonempty, and every pair of members has an upper bound inside ``s``.

    Pairwise upper bounds give bounds for all finite subsets by induction.
    """
    p.check_mask(s)
    if not s:
        return False
    xs = list(bits(s))
    up = p.up
    for i, x in enumerate(xs):
        ux = up[x] & s
        for y in xs[i + 1:]:
            if not ux & up[y]:
                return False
    return True


def is_filtered(p: FinitePoset, s: Mask) -> bool:
    if not s:
        return False
    down = p.down
    xs = list(bits(s))
    for i, x in enumerate(xs):
        for y in xs[i + 1:]:
            if not down[x] & down[y] & s:
                return False
    return True


def irreducibility_witness(p: FinitePoset, a: Mask) -> tuple[Mask, Mask] | None:
    """Closed ``(B, C)`` with ``A`` inside ``B | C`` but in neither, or None.

    Intersecting a witness with ``A`` gives another witness, so ``B`` only
    ranges over closed subsets of ``A``; for a fixed ``B`` the smallest
    usable ``C`` is the closure of ``A \\ B``.
    """
    for b in p.closed_sets:
        if b == a or b & ~a:
            continue
        c = p.closure(a & ~b)
        if c != a:
            return b, c
    return None


def is_irreducible_closed(p: FinitePoset, a: Mask) -> bool:
    return bool(a) and p.is_closed(a) and irreducibility_witness(p, a) is None


def irr_closed_sets(p: FinitePoset) -> tuple[Mask, ...]:
    return tuple(a for a in p.closed_sets if a and irreducibility_witness(p, a) is None)


def is_compact(p: FinitePoset, k: Mask) -> bool:
    """Every cover of ``k`` by basic opens ``up(y)`` has a finite subcover.

    The basis is finite, so the largest such cover (every ``up(y)`` meeting
    ``k``) is checked by extracting one covering member per point.
    """
    cover = [p.up[y] for y in range(p.size) if p.up[y] & k]
    chosen = 0
    for x in bits(k):
        for u in cover:
            if u >> x & 1:
                chosen |= u
                break
        else:
            return False
    return chosen & k == k


@lru_cache(maxsize=4096)
def compact_saturated_sets(p: FinitePoset) -> tuple[Mask, ...]:
    out = tuple(k for k in p.saturated_sets if is_compact(p, k))
    if len(out) != len(p.saturated_sets):
        raise InvariantViolation("a saturated subset of a finite space failed the compactness check")
    return out


def _check_filtered_family(p: FinitePoset, family: Sequence[Mask]) -> list[Mask]:
    fam = [p.check_mask(k) for k in family]
    if not fam:
        raise EmptyFamily("filtered family has no members")
    for k in fam:
        if not k:
            raise EmptyMember("a member of the filtered family is empty; no set can meet it")
        if not p.is_saturated(k):
            raise InvalidFamily(f"member {bin(k)} is not saturated")
    if not is_filtered_family(fam):
        raise InvalidFamily("family is not filtered")
    return fam


def is_filtered_family(fam: Sequence[Mask]) -> bool:
    """Nonempty and every two members contain a third member in their intersection."""
    if not fam:
        return False
    members = set(fam)
    for a, b in combinations(members, 2):
        meet = a & b
        if not any(c & meet == c for c in members):
            return False
    return True


def is_directed_family(fam: Sequence[Mask]) -> bool:
    """Nonempty and every two members lie inside a third member (order: inclusion)."""
    if not fam:
        return False
    members = set(fam)
    for a, b in combinations(members, 2):
        join = a | b
        if not any(c & join == join for c in members):
            return False
    return True


def min_closed_meeting(p: FinitePoset, family: Sequence[Mask]) -> tuple[Mask, ...]:
    """Closed sets that meet every member of ``family`` and are minimal for that."""
    fam = _check_filtered_family(p, family)
    return _min_closed_meeting(p, fam)


def _minimal_meeting_matrix(p: FinitePoset, fam: Sequence[Mask]) -> np.ndarray:
    """``out[k, a]``: closed set ``a`` is minimal among closed sets meeting ``fam[k]``.

    Minimality is tested against lower covers only: meeting a set survives
    enlargement, and every closed proper subset of a closed ``A`` lies inside
    ``A`` minus one of its maximal points, which is again closed.
    """
    g = p.closed_array
    meets = (g[None, :] & np.array(fam, dtype=np.int64)[:, None]) != 0
    upper, lower = p.closed_lower_covers
    covered = np.zeros((g.size, len(fam)), dtype=bool)
    np.logical_or.at(covered, upper, meets[:, lower].T)
    return meets & ~covered.T


def _min_closed_meeting(p: FinitePoset, fam: Sequence[Mask]) -> tuple[Mask, ...]:
    g = p.closed_array
    meets_all = np.all((g[None, :] & np.array(fam, dtype=np.int64)[:, None]) != 0, axis=0)
    upper, lower = p.closed_lower_covers
    covered = np.zeros(g.size, dtype=bool)
    np.logical_or.at(covered, upper, meets_all[lower])
    return tuple(int(a) for a in g[meets_all & ~covered])


def min_closed_meeting_scan(p: FinitePoset, fam: Sequence[Mask]) -> tuple[Mask, ...]:
    """Reference version: scan closed sets by size, discarding supersets of earlier hits."""
    found: list[Mask] = []
    for a in p.closed_by_size:
        if not a:
            continue
        if any(f & a == f for f in found):
            continue
        if all(a & k for k in fam):
            found.append(a)
    return tuple(sorted(found))


def bounded_selector_flags(members: Sequence[Mask], upward: bool) -> np.ndarray:
    """Boolean array over all index masks ``sel`` of ``members``: is the subfamily directed/filtered?

    ``upward`` asks for directed (every pair lies inside a third member);
    otherwise filtered (every pair contains a third member).  ``sel = 0`` is
    never flagged.  Every pair of members is tested against every selector at
    once.
    """
    m = len(members)
    sels = np.arange(1 << m, dtype=np.int64)
    if m < 2:
        return sels != 0
    mem = np.array(members, dtype=np.int64)
    i, j = np.triu_indices(m, k=1)
    if upward:
        target = mem[i] | mem[j]
        inside = (mem[None, :] & target[:, None]) == target[:, None]
    else:
        target = mem[i] & mem[j]
        inside = (mem[None, :] & target[:, None]) == mem[None, :]
    bounds = (inside.astype(np.int64) << np.arange(m, dtype=np.int64)).sum(axis=1)
    pair = (np.int64(1) << i) | (np.int64(1) << j)
    has_pair = (sels[None, :] & pair[:, None]) == pair[:, None]
    unbounded = has_pair & ((sels[None, :] & bounds[:, None]) == 0)
    return (sels != 0) & ~unbounded.any(axis=0)


def bounded_subfamilies(members: Sequence[Mask], upward: bool) -> Iterator[int]:
    """Index masks of the directed (``upward``) or filtered subfamilies of ``members``."""
    for sel in np.flatnonzero(bounded_selector_flags(members, upward)):
        yield int(sel)


def subfamily_unions(members: Sequence[Mask]) -> np.ndarray:
    """``out[sel]`` is the union of the members selected by ``sel``."""
    out = np.zeros(1 << len(members), dtype=np.int64)
    for i, m in enumerate(members):
        half = 1 << i
        out[half:2 * half] = out[:half] | m
    return out


def filtered_families(p: FinitePoset) -> Iterator[tuple[Mask, ...]]:
    """Every filtered subfamily of ``Q(X)`` with nonempty members (brute force)."""
    members = [k for k in compact_saturated_sets(p) if k]
    for sel in bounded_subfamilies(members, upward=False):
        yield tuple(members[i] for i in bits(sel))


BRUTE_FORCE_KF_LIMIT = 4


def kf_sets(p: FinitePoset, countable_only: bool = False, method: str = "fast") -> tuple[Mask, ...]:
    """Closed KF-sets: minimal closed sets meeting every member of a filtered family.

    ``method="fast"`` quantifies over one-member families ``{K}``: a filtered
    family on a finite carrier contains its own intersection, so it meets a
    set exactly when its least member does.  ``method="brute"`` enumerates
    every filtered family (carriers up to ``BRUTE_FORCE_KF_LIMIT``).
    ``countable_only`` restricts to countable families, which on a finite
    carrier is every family.
    """
    if method == "fast":
        singles = [k for k in compact_saturated_sets(p) if k]
        if countable_only and not all(_is_countable((k,)) for k in singles):
            raise InvariantViolation("a finite family was judged uncountable")
        hit = _minimal_meeting_matrix(p, singles).any(axis=0)
        return tuple(int(a) for a in p.closed_array[hit])
    if method == "brute":
        if p.size > BRUTE_FORCE_KF_LIMIT:
            raise CarrierTooLarge(f"brute-force KF enumeration is capped at {BRUTE_FORCE_KF_LIMIT} points")
        families = filtered_families(p)
    else:
        raise ValueError(f"unknown method {method!r}")
    out: set[Mask] = set()
    for fam in families:
        if countable_only and not _is_countable(fam):
            raise InvariantViolation("a finite family was judged uncountable")
        out.update(_min_closed_meeting(p, fam))
    return tuple(sorted(out))


def _is_countable(family: Sequence[Mask]) -> bool:
    # every family over a finite carrier is finite
    return len(family) < float("inf")


def lower_set_of(p: FinitePoset, s: Mask) -> Mask:
    return p.closure(s)


# space predicates


class Verdict(NamedTuple):
    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


def least_member(fam: Sequence[Mask]) -> Mask | None:
    """The member contained in all others, if any."""
    for a in fam:
        if all(a & b == a for b in fam):
            return a
    return None


def greatest_member(fam: Sequence[Mask]) -> Mask | None:
    for a in fam:
        if all(a & b == b for b in fam):
            return a
    return None


def _sober(p: FinitePoset) -> Verdict:
    for a in irr_closed_sets(p):
        generic = [x for x in range(p.size) if p.down[x] == a]
        if len(generic) != 1:
            return Verdict(False, {"irreducible": a, "generic_points": generic})
    return Verdict(True)


def _well_filtered(p: FinitePoset) -> Verdict:
    q = compact_saturated_sets(p)
    opens = p.saturated_sets
    if len(q) <= EXHAUSTIVE_FAMILY_LIMIT:
        families: Iterable[int] = bounded_subfamilies(q, upward=False)
    else:
        # a finite filter basis contains its intersection, so it is enough to
        # let each member of Q act as the least member of a family
        families = (1 << i for i in range(len(q)))
    # inside[j]: index mask of the members of Q contained in opens[j]
    inside = [mask_of(i for i, k in enumerate(q) if k & u == k) for u in opens]
    for sel in families:
        inter = p.full
        for i in bits(sel):
            inter &= q[i]
        for j, u in enumerate(opens):
            if inter & u == inter and not sel & inside[j]:
                return Verdict(False, {"family": tuple(q[i] for i in bits(sel)), "open": u})
    return Verdict(True)


def _locally_compact(p: FinitePoset) -> Verdict:
    q = compact_saturated_sets(p)
    full = p.full
    for x in range(p.size):
        for u in p.saturated_sets:
            if not u >> x & 1:
                continue
            for k in q:
                if k & u != k:
                    continue
                interior = full & ~p.closure(full & ~k)
                if interior >> x & 1:
                    break
            else:
                return Verdict(False, {"point": x, "open": u})
    return Verdict(True)


def way_below_opens(p: FinitePoset) -> dict[Mask, Mask]:
    """For each open ``v``, the union of all opens way below it.

    ``u << v`` iff every directed family of opens whose union contains ``v``
    has a member containing ``u``.  Small lattices are quantified over every
    directed subfamily; larger ones over principal ideals only (a finite
    directed family has a largest member).
    """
    opens = p.saturated_sets
    result = {}
    if len(opens) <= EXHAUSTIVE_FAMILY_LIMIT:
        directed = list(bounded_subfamilies(opens, upward=True))
        unions = [_union(opens[i] for i in bits(sel)) for sel in directed]
        # containing[u]: index mask of the opens that contain opens[u]
        containing = [mask_of(i for i, d in enumerate(opens) if u & d == u) for u in opens]
        for v in opens:
            covering = [sel for sel, w in zip(directed, unions) if w & v == v]
            acc = 0
            for k, u in enumerate(opens):
                if u & ~v:
                    # u << v forces u <= v (take the family {v})
                    continue
                if all(sel & containing[k] for sel in covering):
                    acc |= u
            result[v] = acc
    else:
        for v in opens:
            bound = p.full
            for w in opens:
                if w & v == v:
                    bound &= w
            acc = 0
            for u in opens:
                if u & bound == u:
                    acc |= u
            result[v] = acc
    return result


def _union(fam: Iterable[Mask]) -> Mask:
    out = 0
    for m in fam:
        out |= m
    return out


def _core_compact(p: FinitePoset) -> Verdict:
    for v, below in way_below_opens(p).items():
        if below != v:
            return Verdict(False, {"open": v, "join_of_way_below": below})
    return Verdict(True)


def _join_continuous(p: FinitePoset) -> Verdict:
    # f_x(y) = up(x) & up(y); the preimage of the subbasic open box(U) of the
    # upper Vietoris topology must be Scott open, i.e. an up-set here
    up = p.up
    for x in range(p.size):
        for u in p.saturated_sets:
            pre = mask_of(y for y in range(p.size) if (up[x] & up[y]) & u == up[x] & up[y])
            if not p.is_saturated(pre):
                return Verdict(False, {"x": x, "open": u, "preimage": pre})
    return Verdict(True)


def _dka(p: FinitePoset) -> Verdict:
    q = compact_saturated_sets(p)
    for a in kf_sets(p):
        for k in q:
            low = p.closure(k & a)
            if low not in p.closed_sets:
                return Verdict(False, {"A": a, "K": k})
    return Verdict(True)


def _daw(p: FinitePoset) -> Verdict:
    closed = set(p.closed_sets)
    for a in irr_closed_sets(p):
        for w in p.saturated_sets:
            if p.closure(a & w) not in closed:
                return Verdict(False, {"A": a, "W": w})
    return Verdict(True)


PREDICATES: dict[str, Callable[[FinitePoset], Verdict]] = {
    "sober": _sober,
    "well_filtered": _well_filtered,
    "locally_compact": _locally_compact,
    "core_compact": _core_compact,
    "join_continuous": _join_continuous,
    "dkA": _dka,
    "dAW": _daw,
}


def space_predicate(name: str, p: FinitePoset) -> Verdict:
    """Evaluate a named space property from its definition; witness on failure."""
    try:
        fn = PREDICATES[name]
    except KeyError:
        raise UnknownPredicate(name) from None
    return fn(p)


@dataclass
class LemmaCReport:
    checked: int
    violations: list

    @property
    def holds(self) -> bool:
        return not self.violations


def lemma_c_check(p: FinitePoset) -> LemmaCReport:
    """For each closed KF-set A: (down(K & A) closed for all K in Q) iff A directed."""
    closed = set(p.closed_sets)
    q = compact_saturated_sets(p)
    kfs = kf_sets(p)
    violations = []
    for a in kfs:
        lhs = all(p.closure(k & a) in closed for k in q)
        rhs = is_directed(p, a)
        if lhs != rhs:
            violations.append({"A": a, "down_closed_for_all_K": lhs, "directed": rhs})
    return LemmaCReport(len(kfs), violations)
