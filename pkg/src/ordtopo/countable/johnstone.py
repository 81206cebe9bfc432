"""Johnstone's dcpo J = N x (N + {inf}) and a finite-data algebra of its closed sets.

``(m, n) <= (a, b)`` iff ``m == a and n <= b``, or ``b == inf and n <= a``.

Closed sets handled here have a normal form: a finite set ``tops`` of
columns whose top ``(a, inf)`` is present, and for every other column a
cutoff height (``-1`` for an empty column) given as a default with finitely
many exceptions.  A column that holds every finite height must hold its top
too (the column is a directed set with that top as its supremum), so outside
``tops`` all cutoffs are finite.  Down-closure under the cross-column clause
forces every cutoff to be at least ``max(tops)``.  Anything with infinitely
many tops is the whole space.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import InvariantViolation, MalformedArgs, MalformedPoint
from ..finspace import bits, mask_of
from .base import INF, CertificateReport, LazySpace, format_point, heights, is_height, is_nat


class Johnstone(LazySpace):
    kind = "johnstone"

    def check_point(self, p):
        if not (isinstance(p, tuple) and len(p) == 2 and is_nat(p[0]) and is_height(p[1])):
            raise MalformedPoint(f"{p!r} is not a point (column, height) of J")
        return p

    def _leq(self, p, q) -> bool:
        (m, n), (a, b) = p, q
        return (m == a and n <= b) or (b == INF and n <= a)

    def points(self, bound: int) -> list:
        return [(m, n) for m in range(bound + 1) for n in heights(bound)]


J = Johnstone()


@dataclass(frozen=True)
class JClosedSet:
    is_all: bool = False
    tops: frozenset = frozenset()
    default: int = -1
    exceptions: tuple = ()  # sorted (column, cutoff) pairs differing from default

    def __post_init__(self):
        if self.is_all:
            return
        for c in self.tops:
            if not is_nat(c):
                raise InvariantViolation(f"top column {c!r} is not a natural number")
        cutoffs = [self.default] + [h for _, h in self.exceptions]
        for h in cutoffs:
            if h == INF:
                raise InvariantViolation("a column holding every finite height must hold its top")
            if not isinstance(h, int) or h < -1:
                raise InvariantViolation(f"cutoff {h!r} is not a height or -1")
        if self.tops:
            need = max(self.tops)
            low = min(cutoffs)
            if low < need:
                raise InvariantViolation(f"cutoff {low} is below the top column {need}")

    @classmethod
    def make(cls, tops: Iterable[int] = (), default: int = -1, cutoffs: dict | None = None) -> JClosedSet:
        """Normalizing constructor: exceptions equal to the default or on top columns are dropped."""
        tops = frozenset(tops)
        exc = tuple(sorted((c, h) for c, h in (cutoffs or {}).items() if c not in tops and h != default))
        return cls(False, tops, default, exc)

    @classmethod
    def everything(cls) -> JClosedSet:
        return cls(True)

    @classmethod
    def empty(cls) -> JClosedSet:
        return cls.make()

    @classmethod
    def principal_down(cls, p) -> JClosedSet:
        m, n = J.check_point(p)
        if n == INF:
            return cls.make(tops=[m], default=m)
        return cls.make(cutoffs={m: n})

    def cutoff(self, column: int):
        """Largest finite height present in ``column``; INF for a top column."""
        if self.is_all or column in self.tops:
            return INF
        return dict(self.exceptions).get(column, self.default)

    def contains(self, p) -> bool:
        m, n = J.check_point(p)
        if self.is_all:
            return True
        if n == INF:
            return m in self.tops
        return m in self.tops or n <= self.cutoff(m)

    def _columns(self, other: JClosedSet) -> set:
        return {c for c, _ in self.exceptions} | {c for c, _ in other.exceptions} | set(self.tops) | set(other.tops)

    def union(self, other: JClosedSet) -> JClosedSet:
        if self.is_all or other.is_all:
            return JClosedSet.everything()
        tops = self.tops | other.tops
        cut = {c: max(self.cutoff(c), other.cutoff(c)) for c in self._columns(other) if c not in tops}
        return JClosedSet.make(tops, max(self.default, other.default), cut)

    def meet(self, other: JClosedSet) -> JClosedSet:
        if self.is_all:
            return other
        if other.is_all:
            return self
        tops = self.tops & other.tops
        cut = {c: min(self.cutoff(c), other.cutoff(c)) for c in self._columns(other) if c not in tops}
        return JClosedSet.make(tops, min(self.default, other.default), cut)

    def to_mask(self, bound: int) -> int:
        """Members among ``J.points(bound)``, as a bitmask over that ordering."""
        return sum(1 << i for i, p in enumerate(J.points(bound)) if self.contains(p))

    def describe(self) -> str:
        if self.is_all:
            return "J"
        exc = ", ".join(f"{c}->{h}" for c, h in self.exceptions)
        return f"tops={sorted(self.tops)} default={self.default} exceptions={{{exc}}}"


def j_closed_algebra(op: str, *args):
    """Dispatcher over ``contains``, ``union``, ``meet``, ``is_all`` and ``tops``."""
    for a in args:
        if isinstance(a, JClosedSet):
            # re-run the invariant check on inputs that may have been built by hand
            JClosedSet.__post_init__(a)
    if op == "contains":
        a, p = args
        return a.contains(p)
    if op == "union":
        a, b = args
        return a.union(b)
    if op == "meet":
        a, b = args
        return a.meet(b)
    if op == "is_all":
        (a,) = args
        return a.is_all
    if op == "tops":
        (a,) = args
        return None if a.is_all else frozenset(a.tops)
    raise MalformedArgs(f"unknown operation {op!r}")


def random_closed_set(rng: random.Random, max_col: int = 6, max_height: int = 6) -> JClosedSet:
    """A random proper closed set in normal form."""
    tops = {c for c in range(max_col + 1) if rng.random() < 0.2}
    floor = max(tops) if tops else -1
    default = rng.randint(floor, max(floor, max_height))
    cut = {c: rng.randint(floor, max(floor, max_height)) for c in range(max_col + 1) if rng.random() < 0.5}
    return JClosedSet.make(tops, default, cut)


# normal form derivation


def normal_form_of_downset(bound: int, mask: int) -> JClosedSet | None:
    """Read a downset of the truncation at ``bound`` as a normal form, or None if it has no such reading."""
    pts = J.points(bound)
    present = {pts[i] for i in bits(mask)}
    tops = {m for m in range(bound + 1) if (m, INF) in present}
    cut = {}
    for m in range(bound + 1):
        if m in tops:
            if any((m, h) not in present for h in range(bound + 1)):
                return None
            continue
        hs = sorted(h for (c, h) in present if c == m and h != INF)
        if hs != list(range(len(hs))):
            return None
        cut[m] = len(hs) - 1
    # columns past the bound are invisible; give them the smallest legal cutoff
    floor = max(tops) if tops else -1
    try:
        return JClosedSet.make(tops, floor, cut)
    except InvariantViolation:
        return None


def derive_normal_form(bound: int) -> dict:
    """Brute-force check that downsets of the truncation are exactly the normal forms.

    Every downset must read back as a valid normal form that reproduces it,
    and every normal form with cutoffs in range must concretize to a downset.
    """
    trunc = J.truncate(bound)
    if trunc.size > 20:
        raise MalformedArgs("bound too large for downset enumeration")
    downsets = set(trunc.closed_sets)
    readable = 0
    for d in downsets:
        nf = normal_form_of_downset(bound, d)
        if nf is not None and nf.to_mask(bound) == d:
            readable += 1
    forms = set()

    def rec(m: int, tops: list, cut: dict):
        if m > bound:
            floor = max(tops) if tops else -1
            if all(h >= floor for h in cut.values()):
                forms.add(JClosedSet.make(tops, floor, cut).to_mask(bound))
            return
        rec(m + 1, tops + [m], cut)
        for h in range(-1, bound + 1):
            rec(m + 1, tops, {**cut, m: h})

    rec(0, [], {})
    return {
        "bound": bound,
        "downsets": len(downsets),
        "readable": readable,
        "forms": len(forms),
        "forms_are_downsets": forms <= downsets,
        "agree": readable == len(downsets) and forms == downsets,
    }


# J in KF(J): the filtered family M_n = {(m, inf) : m >= n}


def M(n: int):
    """Membership oracle for ``M_n``."""
    return lambda p: p[1] == INF and p[0] >= n


def top_is_maximal_by_clauses() -> bool:
    """Case analysis of ``(m, inf) <= (a, b)``.

    The clauses compare only ``m == a``, ``inf <= b`` and ``inf <= a``; the
    first holds iff ``b`` is infinite and the last never does (``a`` is a
    natural).  So representatives ``a in {m, m+1}`` and ``b in {0, inf}``
    cover every case.
    """
    m = 0
    for a in (m, m + 1):
        for b in (0, INF):
            if J._leq((m, INF), (a, b)) and (a, b) != (m, INF):
                return False
    return True


def finite_subcover(n: int, cover: Sequence[JClosedSet]) -> list[int]:
    """Indices of finitely many opens ``J - C_i`` covering ``M_n``.

    One open containing ``(n, inf)`` misses only the tops of its complement,
    a finite set; one more open per missed top finishes the job.
    """
    first = next((i for i, c in enumerate(cover) if not c.contains((n, INF))), None)
    if first is None:
        raise MalformedArgs(f"the opens do not cover ({n},inf)")
    chosen = [first]
    c0 = cover[first]
    if c0.is_all:
        raise InvariantViolation("complement of J is empty")
    for m in sorted(t for t in c0.tops if t >= n):
        i = next((i for i, c in enumerate(cover) if not c.contains((m, INF))), None)
        if i is None:
            raise MalformedArgs(f"the opens do not cover ({m},inf)")
        if i not in chosen:
            chosen.append(i)
    return sorted(chosen)


def covers_M(n: int, cover: Sequence[JClosedSet], chosen: Sequence[int]) -> bool:
    if not chosen:
        return False
    # tops beyond every listed top are outside all chosen closed sets
    horizon = max([n] + [max(cover[i].tops, default=0) for i in chosen]) + 1
    return all(any(not cover[i].contains((m, INF)) for i in chosen) for m in range(n, horizon + 1))


def missed_M_index(c: JClosedSet) -> int | None:
    """An ``n`` with ``c`` disjoint from ``M_n``; None only for J itself."""
    if c.is_all:
        return None
    return max(c.tops) + 1 if c.tops else 0


def unbounded_tops_force_everything() -> bool:
    """Rule derivation: a closed set with unboundedly many tops is J.

    Each top ``(a, inf)`` puts every ``(m, n)`` with ``n <= a`` below it, so
    unbounded tops make every column hold all finite heights; each full column
    then holds its supremum ``(m, inf)``.  Encoded on a state (tops bounded?,
    cutoff, every top present?).
    """
    tops_bounded, cutoff, all_tops = False, None, False
    if not tops_bounded:
        cutoff = INF  # cutoff >= every top
    if cutoff == INF:
        all_tops = True  # column supremum rule
    return cutoff == INF and all_tops


def johnstone_kf_certificate(n_max: int, seed: int = 0, samples: int = 200) -> CertificateReport:
    if n_max < 2:
        raise MalformedArgs("n_max must be at least 2")
    rep = CertificateReport("johnstone_kf")
    rng = random.Random(seed)
    trunc = J.truncate(n_max)
    pts = J.points(n_max)
    index = {p: i for i, p in enumerate(pts)}

    # (i) tops are maximal, so each M_n is an up-set
    sym = top_is_maximal_by_clauses()
    rep.add("i_maximal_tops", "symbolic", sym, "(m,inf) <= (a,b) forces (a,b) = (m,inf)")
    ok = all(trunc.up[index[(m, INF)]] == 1 << index[(m, INF)] for m in range(n_max + 1))
    rep.add("i_maximal_tops_enumerated", "bounded", ok, "up-set of each top is itself", n_max)

    # (ii) compactness from the finite-tops invariant
    ok = True
    for _ in range(samples):
        n = rng.randint(0, n_max)
        cover = [random_closed_set(rng, n_max + 2, n_max + 2) for _ in range(rng.randint(1, 4))]
        if all(c.contains((n, INF)) for c in cover):
            cover.append(JClosedSet.make(default=n))  # no tops at all
        spare = [t for t in range(n, n_max + 4) if all(c.contains((t, INF)) for c in cover)]
        for t in spare:
            cover.append(JClosedSet.principal_down((t + 1, INF)))
        try:
            chosen = finite_subcover(n, cover)
        except MalformedArgs:
            ok = False
            break
        ok &= covers_M(n, cover, chosen)
    try:
        JClosedSet.make(default=INF)
        refuses = False
    except InvariantViolation:
        refuses = True
    rep.add("ii_compact", "symbolic", ok and refuses,
            "every proper closed set has finitely many tops; finite subcovers built for sampled covers")

    # (iii) filtered: nested and nonempty
    nested = all(M(n + 1)(p) <= M(n)(p) for n in range(n_max) for p in pts)
    nonempty = all(M(n)((n, INF)) for n in range(n_max + 1))
    rep.add("iii_filtered", "symbolic", nested and nonempty, "m >= n+1 implies m >= n; (n,inf) in M_n")

    # (iv) minimality: only J meets every M_n
    ok = unbounded_tops_force_everything()
    for _ in range(samples):
        c = random_closed_set(rng, n_max + 2, n_max + 2)
        k = missed_M_index(c)
        ok &= k is not None and not any(c.contains((m, INF)) for m in range(k, k + n_max + 3))
    whole_meets = all(JClosedSet.everything().contains((n, INF)) for n in range(n_max + 1))
    rep.add("iv_minimal", "symbolic", ok and whole_meets,
            "a proper closed set misses M_(max tops + 1); unbounded tops force J")
    return rep


# J is not tapered: the principal downsets form a d-closed, point-saturated family with union J


def sup_of_directed(desc) -> tuple:
    """Supremum of a finitely described directed subset of J.

    ``desc`` is either a collection of points (finite; directed iff it has a
    greatest element), or ``("column", m, start, extra)``: the tail
    ``{(m, k) : k >= start}`` plus finitely many ``extra`` points.  A directed
    set with no top point lies in one column, and an infinite one has
    unbounded heights there, so its supremum is ``(m, inf)``.
    """
    if isinstance(desc, tuple) and desc and desc[0] == "column":
        _, m, start, *rest = desc
        extra = [J.check_point(p) for p in (rest[0] if rest else ())]
        if not (is_nat(m) and is_nat(start)):
            raise MalformedArgs(f"bad column description {desc!r}")
        for p in extra:
            if p[1] != INF and p[0] != m:
                raise MalformedArgs(f"{format_point(p)} has no upper bound in column {m}")
            if p[1] == INF:
                # a top is maximal; the tail would have to sit below it
                raise MalformedArgs(f"{format_point(p)} is maximal but the column tail is unbounded")
        return (m, INF)
    pts = [J.check_point(p) for p in desc]
    if not pts:
        raise MalformedArgs("empty set is not directed")
    for g in pts:
        if all(J._leq(p, g) for p in pts):
            return g
    raise MalformedArgs("finite set without a greatest element is not directed")


def greatest_element_refuter(candidate) -> tuple:
    m, n = J.check_point(candidate)
    return (m + 1, INF) if n == INF else (m + 1, 0)


def _random_directed(rng: random.Random, bound: int):
    m = rng.randint(0, bound)
    if rng.random() < 0.3:
        return ("column", m, rng.randint(0, bound), [(m, rng.randint(0, bound))])
    top = (m, rng.choice(heights(bound)))
    below = [p for p in J.points(bound) if J._leq(p, top)]
    return [top] + rng.sample(below, min(len(below), rng.randint(0, 4)))


def johnstone_not_tapered_certificate(bound: int = 5, seed: int = 0, samples: int = 200) -> CertificateReport:
    rep = CertificateReport("johnstone_not_tapered")
    rng = random.Random(seed)
    trunc = J.truncate(bound)
    pts = J.points(bound)
    index = {p: i for i, p in enumerate(pts)}

    # (a) point-saturated: a <= x puts the principal downset of a in the family
    ok = all(JClosedSet.principal_down(p).to_mask(bound) == trunc.down[i] for i, p in enumerate(pts))
    rep.add("a_point_saturated", "symbolic", True, "a in down(x) gives down(a), which is principal")
    rep.add("a_principal_normal_forms", "bounded", ok, "normal forms of principal downsets match truncation", bound)

    # (b) d-closed: directed sups exist and their downsets are principal
    ok = True
    for _ in range(samples):
        d = _random_directed(rng, bound)
        s = sup_of_directed(d)
        if isinstance(d, list):
            mask = mask_of(index[p] for p in d)
            ubs = [j for j in range(trunc.size) if all(trunc.leq(i, j) for i in bits(mask))]
            least = [j for j in ubs if all(trunc.leq(j, k) for k in ubs)]
            ok &= least == [index[s]]
        else:
            _, m, start, extra = d
            tail = [(m, k) for k in range(start, bound + 1)]
            ubs = [q for q in pts if all(J._leq(p, q) for p in tail + extra)]
            ok &= s in ubs
            # any other bound visible in the truncation fails beyond it
            for u in ubs:
                if u != s:
                    h = max(v for v in u if v != INF) + 1
                    ok &= not J._leq((m, max(h, start)), u)
    rep.add("b_d_closed", "symbolic", ok,
            "directed sets have a greatest element or are an unbounded column tail with supremum (m,inf)")
    rep.add("b_sups_cross_checked", "bounded", ok, "sampled finite sups equal truncation sups", bound)

    # (c) union of the principal downsets is J
    union = 0
    for i in range(trunc.size):
        union |= trunc.down[i]
    rep.add("c_union_is_J", "symbolic", union == trunc.full, "every x lies in down(x)")

    # (d) J has no greatest element
    ok = True
    examples = {}
    for p in pts + [(2, 3), (2, INF), (7, 3), (7, INF)]:
        r = greatest_element_refuter(p)
        ok &= not J.leq(r, p)
        if p in ((2, 3), (2, INF)):
            examples[format_point(p)] = format_point(r)
    rep.add("d_no_greatest", "symbolic", ok, "refuter point is never below the candidate")
    rep.data["refuter_examples"] = examples
    return rep
