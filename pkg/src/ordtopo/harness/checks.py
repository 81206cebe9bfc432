"""Named regression checks over single finite posets, used by fuzzing and the suite."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..completions import (
    SumSpec,
    THEOREMS,
    beneath_relation,
    ershov_sum,
    lemma_n_order,
    pre_beneath_table,
    pre_c_compact_elements,
    tapered_closed_sets,
    theorem_check,
    wd_oracle,
    wd_sets_finite,
)
from ..errors import NotALattice, UnknownCheck
from ..finspace import (
    FinitePoset,
    irr_closed_sets,
    kf_sets,
    lemma_c_check,
    space_predicate,
)
from ..lattices import FiniteLattice
from .rng import Rng

# fibers with a greatest element: exactly the irreducible ones up to three points
IRREDUCIBLE_FIBERS = (
    FinitePoset.chain(1),
    FinitePoset.chain(2),
    FinitePoset.chain(3),
    FinitePoset([0b101, 0b110, 0b100]),
)


@dataclass
class CheckOutcome:
    passed: bool
    witness: object = None


def point_closures(p: FinitePoset) -> tuple:
    return tuple(sorted(set(p.down)))


def check_collapse(p: FinitePoset, rng: Rng) -> CheckOutcome:
    """Every finite-space completion family equals the set of point closures."""
    want = point_closures(p)
    families = {
        "irr": irr_closed_sets(p),
        "kf": kf_sets(p),
        "tapered": tapered_closed_sets(p),
        "pre_c_compact": pre_c_compact_elements(p),
        "wd": wd_sets_finite(p),
    }
    if p.size <= 4:
        families["kf_brute"] = kf_sets(p, method="brute")
    bad = {k: v for k, v in families.items() if tuple(sorted(v)) != want}
    return CheckOutcome(not bad, {"expected": want, "got": bad} if bad else None)


def check_lemma_c(p: FinitePoset, rng: Rng) -> CheckOutcome:
    r = lemma_c_check(p)
    return CheckOutcome(r.holds, r.violations or None)


def check_pre_beneath(p: FinitePoset, rng: Rng) -> CheckOutcome:
    a = pre_beneath_table(p, "shortcut")
    b = pre_beneath_table(p, "hfamilies")
    diff = {k: (a[k], b[k]) for k in a if a[k] != b[k]}
    return CheckOutcome(not diff, diff or None)


def check_beneath_lattice(p: FinitePoset, rng: Rng) -> CheckOutcome:
    """Both beneath routes agree; vacuous on posets that are not lattices."""
    try:
        lat = FiniteLattice(p)
    except NotALattice:
        return CheckOutcome(True)
    a = beneath_relation(lat, "join_cover")
    b = beneath_relation(lat, "scott_closed")
    return CheckOutcome(a == b, {"join_cover": a, "scott_closed": b} if a != b else None)


def check_wd(p: FinitePoset, rng: Rng) -> CheckOutcome:
    """The closed WD-sets found by bounded search are the point closures."""
    want = set(point_closures(p))
    for a in p.closed_sets:
        if not a:
            continue
        v = wd_oracle(p, a, 3)
        if v.holds != (a in want):
            return CheckOutcome(False, {"set": a, "oracle": v.holds})
    return CheckOutcome(True)


def check_lemma_n_corpus(p: FinitePoset, rng: Rng) -> CheckOutcome:
    """Closed-form sum order equals the specialization order of the built topology."""
    fibers = tuple(rng.choice(IRREDUCIBLE_FIBERS) for _ in range(p.size))
    spec = SumSpec(p, fibers)
    z = ershov_sum(spec)
    pts = spec.points
    for a, za in enumerate(pts):
        for b, zb in enumerate(pts):
            if lemma_n_order(spec, za, zb) != z.order.leq(a, b):
                return CheckOutcome(False, {"fibers": [f.up for f in fibers], "pair": [za, zb]})
    return CheckOutcome(True)


def _theorem(name: str) -> Callable[[FinitePoset, Rng], CheckOutcome]:
    def run(p: FinitePoset, rng: Rng) -> CheckOutcome:
        r = theorem_check(name, p)
        return CheckOutcome(r.holds, r.witness)

    return run


def _predicate(name: str) -> Callable[[FinitePoset, Rng], CheckOutcome]:
    def run(p: FinitePoset, rng: Rng) -> CheckOutcome:
        v = space_predicate(name, p)
        return CheckOutcome(v.holds, v.witness)

    return run


@dataclass(frozen=True)
class Check:
    name: str
    statement: str
    run: Callable[[FinitePoset, Rng], CheckOutcome]
    max_size: int


CHECKS: dict[str, Check] = {}


def _register(name: str, statement: str, run, max_size: int) -> None:
    CHECKS[name] = Check(name, statement, run, max_size)


_register("collapse", "irr = KF = tapered = pre-C-compact = WD = point closures", check_collapse, 8)
_register("lemma_c", "closed KF-set A: down(K & A) closed for all compact K iff A directed", check_lemma_c, 8)
_register("pre_beneath", "pre-beneath shortcut equals H-family enumeration", check_pre_beneath, 4)
_register("beneath_lattice", "beneath: join-cover form equals Scott-closed quantifier", check_beneath_lattice, 12)
_register("wd_sets", "bounded WD search finds exactly the point closures", check_wd, 3)
_register("lemma_n_corpus", "sum order formula equals specialization order", check_lemma_n_corpus, 3)
for _name in THEOREMS:
    _register(_name, f"theorem check {_name}", _theorem(_name), 5)
for _name in ("sober", "well_filtered", "locally_compact", "core_compact", "join_continuous"):
    _register(_name, f"finite T0 spaces are {_name.replace('_', '-')}", _predicate(_name), 8)


def get_check(name: str) -> Check:
    try:
        return CHECKS[name]
    except KeyError:
        raise UnknownCheck(name) from None
