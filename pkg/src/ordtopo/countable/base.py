"""Lazily described countable spaces: order oracles, enumeration and truncation.

Points are tuples whose coordinates are naturals or ``INF`` (``math.inf``).
A truncation at bound ``N`` keeps every point whose natural coordinates are
at most ``N``; infinite coordinates are kept as distinguished values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from ..errors import MalformedPoint
from ..finspace import FinitePoset, mask_of

INF = math.inf


def is_nat(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool) and v >= 0


def is_height(v) -> bool:
    """A natural number or INF."""
    return is_nat(v) or v == INF


def format_value(v) -> str:
    return "inf" if v == INF else str(v)


def format_point(p) -> str:
    if isinstance(p, tuple):
        return "(" + ",".join(format_value(v) for v in p) + ")"
    return format_value(p)


def parse_point(text: str):
    """Inverse of :func:`format_point`."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        parts = [t.strip() for t in s[1:-1].split(",")]
        return tuple(INF if t == "inf" else int(t) for t in parts)
    return INF if s == "inf" else int(s)


def heights(bound: int) -> list:
    return list(range(bound + 1)) + [INF]


class LazySpace:
    """A countable poset given by an order oracle and a bounded enumerator."""

    kind = "abstract"

    def check_point(self, p):
        raise NotImplementedError

    def _leq(self, p, q) -> bool:
        raise NotImplementedError

    def leq(self, p, q) -> bool:
        return self._leq(self.check_point(p), self.check_point(q))

    def points(self, bound: int) -> list:
        """All points with natural coordinates at most ``bound``, in a fixed order."""
        raise NotImplementedError

    def truncate(self, bound: int) -> FinitePoset:
        """The finite subposet on :meth:`points`; labels are the points themselves."""
        if bound < 0:
            raise ValueError("bound must be nonnegative")
        pts = self.points(bound)
        up = [mask_of(j for j, q in enumerate(pts) if self._leq(p, q)) for p in pts]
        return FinitePoset(up, labels=pts)


def lazy_leq(space: LazySpace, p, q) -> bool:
    return space.leq(p, q)


def truncate(space: LazySpace, bound: int) -> FinitePoset:
    return space.truncate(bound)


class CofiniteNat(LazySpace):
    """Naturals with the cofinite topology; every singleton is closed, so the order is discrete."""

    kind = "cofinite_nat"

    def check_point(self, p):
        if not is_nat(p):
            raise MalformedPoint(f"{p!r} is not a natural number")
        return p

    def _leq(self, p, q) -> bool:
        return p == q

    def points(self, bound: int) -> list:
        return list(range(bound + 1))


class NatChain(LazySpace):
    """Naturals in their usual order (Scott topology); no greatest element."""

    kind = "nat_chain"

    def check_point(self, p):
        if not is_nat(p):
            raise MalformedPoint(f"{p!r} is not a natural number")
        return p

    def _leq(self, p, q) -> bool:
        return p <= q

    def points(self, bound: int) -> list:
        return list(range(bound + 1))

    def greatest(self):
        return None


class ErshovSumLazy(LazySpace):
    """Sum of fibers over a base, ordered by the two-clause rule.

    A point is ``(y, x)``: fiber element ``y`` over base point ``x``.  It is
    below ``(y', x')`` when ``x = x'`` and ``y <= y'`` in the fiber, or when
    ``x < x'`` strictly in the base and ``y'`` is the greatest element of the
    fiber over ``x'``.
    """

    kind = "ershov_sum_lazy"

    def __init__(self, base: LazySpace, fiber: LazySpace):
        self.base = base
        self.fiber = fiber

    def check_point(self, p):
        if not (isinstance(p, tuple) and len(p) == 2):
            raise MalformedPoint(f"{p!r} is not a (fiber, base) pair")
        self.fiber.check_point(p[0])
        self.base.check_point(p[1])
        return p

    def clause2_fires(self, p, q) -> bool:
        (_, x0), (y1, x1) = p, q
        if x0 == x1 or not self.base._leq(x0, x1):
            return False
        top = self.fiber.greatest()
        return top is not None and y1 == top

    def _leq(self, p, q) -> bool:
        (y0, x0), (y1, x1) = p, q
        if x0 == x1 and self.fiber._leq(y0, y1):
            return True
        return self.clause2_fires(p, q)

    def points(self, bound: int) -> list:
        return [(y, x) for x in self.base.points(bound) for y in self.fiber.points(bound)]


def sum_example_space() -> ErshovSumLazy:
    """Copies of the natural-number chain summed over the cofinite naturals."""
    return ErshovSumLazy(CofiniteNat(), NatChain())


# certificate reports


@dataclass
class SubCheck:
    """One step of a certificate.

    ``kind`` is ``symbolic`` (argued over the finite representation),
    ``rule`` (a closure rule applied to band descriptions) or ``bounded``
    (exhaustive or sampled up to ``bound`` only).
    """

    name: str
    kind: str
    passed: bool
    detail: str = ""
    bound: int | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "kind": self.kind, "passed": self.passed, "detail": self.detail}
        if self.bound is not None:
            out["bound"] = self.bound
        return out


@dataclass
class CertificateReport:
    name: str
    steps: list[SubCheck] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name: str, kind: str, passed: bool, detail: str = "", bound: int | None = None) -> SubCheck:
        step = SubCheck(name, kind, bool(passed), detail, bound)
        self.steps.append(step)
        return step

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps)

    @property
    def bound(self) -> int | None:
        bounds = [s.bound for s in self.steps if s.kind == "bounded" and s.bound is not None]
        return max(bounds) if bounds else None

    @property
    def result(self) -> str:
        """``pass`` / ``bounded-pass`` / ``fail``; bounded evidence is never reported as a plain pass."""
        if not self.passed:
            return "fail"
        return "bounded-pass" if any(s.kind == "bounded" for s in self.steps) else "pass"

    def to_json(self) -> dict:
        out = {"name": self.name, "result": self.result, "steps": [s.to_json() for s in self.steps]}
        if self.bound is not None:
            out["bound"] = self.bound
        if self.data:
            out["data"] = self.data
        return out


def points_grid(*axes: Sequence) -> list[tuple]:
    return list(product(*axes))


def sample_subset(pts: Iterable, mask: int) -> list:
    return [p for i, p in enumerate(pts) if mask >> i & 1]


def finite_sum_spec(space: ErshovSumLazy, bound: int):
    """The finite sum over the truncated base and fibers.

    The cofinite base becomes discrete and each fiber a finite chain, which
    does have a top; only the within-fiber clause is comparable between the
    two, so callers compare orders on same-fiber pairs.
    """
    from ..completions import SumSpec

    base = space.base.truncate(bound)
    fiber = space.fiber.truncate(bound)
    return SumSpec(base, tuple(fiber for _ in range(base.size)))
