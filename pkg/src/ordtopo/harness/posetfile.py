"""Line-oriented text format for finite posets.

    poset v1
    name: vee
    elements: 3
    cover: 0 2
    cover: 1 2

``cover: i j`` states that ``j`` covers ``i``; the order is the
reflexive-transitive closure of the listed pairs.  ``#`` starts a comment.
The header line is optional but must come first when present.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import CycleError, PosetSyntaxError
from ..finspace import FinitePoset

HEADER = "poset v1"


@dataclass(frozen=True)
class PosetFile:
    poset: FinitePoset
    name: str | None = None


def _find_cycle(n: int, edges: list[tuple[int, int]]) -> list[int] | None:
    succ: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        succ[i].append(j)
    state = [0] * n  # 0 new, 1 on stack, 2 done
    stack: list[int] = []

    def visit(v: int) -> list[int] | None:
        state[v] = 1
        stack.append(v)
        for w in succ[v]:
            if state[w] == 1:
                return stack[stack.index(w):] + [w]
            if state[w] == 0:
                found = visit(w)
                if found:
                    return found
        stack.pop()
        state[v] = 2
        return None

    for v in range(n):
        if state[v] == 0:
            found = visit(v)
            if found:
                return found
    return None


def parse_poset_file(text: str) -> PosetFile:
    size = None
    name = None
    covers: list[tuple[int, int, int]] = []
    seen_content = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == HEADER:
            if seen_content:
                raise PosetSyntaxError("header must be the first line", lineno)
            seen_content = True
            continue
        seen_content = True
        key, sep, value = line.partition(":")
        if not sep:
            raise PosetSyntaxError(f"expected 'key: value', got {line!r}", lineno)
        key, value = key.strip(), value.strip()
        if key == "elements":
            if size is not None:
                raise PosetSyntaxError("elements given twice", lineno)
            if not value.isdigit():
                raise PosetSyntaxError(f"element count {value!r} is not a natural number", lineno)
            size = int(value)
        elif key == "cover":
            parts = value.split()
            if len(parts) != 2 or not all(t.isdigit() for t in parts):
                raise PosetSyntaxError(f"cover needs two indices, got {value!r}", lineno)
            covers.append((int(parts[0]), int(parts[1]), lineno))
        elif key == "name":
            name = value
        else:
            raise PosetSyntaxError(f"unknown key {key!r}", lineno)
    if size is None:
        raise PosetSyntaxError("missing 'elements:' line", 0)
    for i, j, lineno in covers:
        if i >= size or j >= size:
            raise PosetSyntaxError(f"cover {i} {j} outside 0..{size - 1}", lineno)
    edges = [(i, j) for i, j, _ in covers]
    cycle = _find_cycle(size, edges)
    if cycle:
        raise CycleError(cycle)
    return PosetFile(FinitePoset.from_pairs(size, edges), name)


def parse_poset(text: str) -> FinitePoset:
    return parse_poset_file(text).poset


def serialize_poset(p: FinitePoset, name: str | None = None) -> str:
    """Canonical text: header, optional name, size, then the Hasse covers in sorted order."""
    lines = [HEADER]
    if name:
        lines.append(f"name: {name}")
    lines.append(f"elements: {p.size}")
    lines += [f"cover: {i} {j}" for i, j in sorted(p.covers())]
    return "\n".join(lines) + "\n"


def read_poset(path: str) -> PosetFile:
    with open(path, encoding="utf-8") as fh:
        return parse_poset_file(fh.read())
