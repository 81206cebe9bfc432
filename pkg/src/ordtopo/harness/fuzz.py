"""Seeded fuzzing of named checks, with greedy shrinking of failing posets."""
from __future__ import annotations

import time
import zlib
from typing import Callable, Sequence

from ..finspace import FinitePoset
from .checks import Check, get_check
from .report import Record, Report
from .rng import Rng, random_poset


def shrink(p: FinitePoset, fails: Callable[[FinitePoset], bool]) -> FinitePoset:
    """Remove elements one at a time while the failure persists.

    The result still fails, and removing any single element from it makes
    the failure disappear.
    """
    current = p
    changed = True
    while changed and current.size > 1:
        changed = False
        for x in range(current.size):
            smaller = current.induced(current.full & ~(1 << x))
            if fails(smaller):
                current = smaller
                changed = True
                break
    return current


def _label(name: str) -> int:
    return zlib.crc32(name.encode())


def run_trial(check: Check, rng: Rng, max_size: int) -> tuple[FinitePoset, bool, object]:
    size = rng.randint(1, max(1, min(max_size, check.max_size)))
    p = random_poset(rng, size, rng.random())
    out = check.run(p, rng.fork(0))
    return p, out.passed, out.witness


def fuzz(rng: Rng, trials: int, max_size: int, check_list: Sequence[str], timings: bool = False) -> Report:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    checks = [get_check(name) for name in check_list]
    report = Report(["fuzz", str(trials), str(max_size), ",".join(check_list)], rng.seed)
    for check in checks:
        stream = rng.fork(_label(check.name))
        for t in range(trials):
            trial_rng = stream.fork(t)
            start = time.perf_counter()
            p, ok, witness = run_trial(check, trial_rng, max_size)
            rec = Record(check.name, check.statement, "pass" if ok else "fail", t)
            if not ok:
                def fails(q: FinitePoset) -> bool:
                    return not check.run(q, trial_rng.fork(0)).passed

                small = shrink(p, fails)
                rec.witness = {"poset": small, "detail": check.run(small, trial_rng.fork(0)).witness}
            if timings:
                rec.duration = time.perf_counter() - start
            report.add(rec)
    return report
