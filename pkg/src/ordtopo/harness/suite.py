"""The regression suite: finite-scale checks over fixed corpora plus the countable certificates."""
from __future__ import annotations

import time
from typing import Callable, Iterable

from ..completions import beneath_relation, ershov_sum, lemma_n_order, pre_beneath_table
from ..countable import (
    L_certificates,
    finite_sum_spec,
    johnstone_kf_certificate,
    johnstone_not_tapered_certificate,
    sum_example_space,
)
from ..countable.example_l import closed_form_matches_closure
from ..countable.johnstone import derive_normal_form
from ..finspace import FinitePoset, enumerate_posets
from ..lattices import enumerate_lattices
from .checks import CHECKS, THEOREMS
from .corpus import ershov_corpus, labelled_posets, random_posets
from .report import Record, Report
from .rng import Rng

PREDICATE_CHECKS = ("sober", "well_filtered", "locally_compact", "core_compact", "join_continuous")


def _over(report: Report, cid: str, statement: str, items: Iterable, test: Callable, timings: bool) -> Record:
    """One aggregated record: pass unless some item fails; the first failure is the witness."""
    start = time.perf_counter()
    count = 0
    witness = None
    for item in items:
        count += 1
        ok, detail = test(item)
        if not ok:
            witness = {"item": item, "detail": detail, "index": count - 1}
            break
    rec = Record(cid, f"{statement} [{count} case(s)]", "fail" if witness else "pass", 0, witness)
    if timings:
        rec.duration = time.perf_counter() - start
    return report.add(rec)


def _check_fn(name: str, seed: int):
    check = CHECKS[name]

    def test(p: FinitePoset):
        out = check.run(p, Rng(seed))
        return out.passed, out.witness

    return test


def _certificate(report: Report, cid: str, statement: str, make, timings: bool) -> Record:
    start = time.perf_counter()
    cert = make()
    rec = Record(cid, statement, cert.result, 0, None if cert.passed else cert.to_json(), cert.bound)
    if timings:
        rec.duration = time.perf_counter() - start
    return report.add(rec)


def run_finite(report: Report, seed: int, random_count: int, lattice_max: int, timings: bool) -> None:
    small = lambda: labelled_posets(5)  # noqa: E731
    rand = lambda: random_posets(seed, random_count)  # noqa: E731
    for name in ("collapse", "lemma_c"):
        st = CHECKS[name].statement
        _over(report, f"finite.{name}.labelled_le5", st, small(), _check_fn(name, seed), timings)
        _over(report, f"finite.{name}.random_6to8", st, rand(), _check_fn(name, seed), timings)
    for name in PREDICATE_CHECKS:
        _over(report, f"finite.predicate.{name}", CHECKS[name].statement, small(), _check_fn(name, seed), timings)

    def same_pre_beneath(p):
        a, b = pre_beneath_table(p, "shortcut"), pre_beneath_table(p, "hfamilies")
        return a == b, None

    _over(report, "completions.pre_beneath.labelled_le4", CHECKS["pre_beneath"].statement,
          labelled_posets(4), same_pre_beneath, timings)

    def same_beneath(lat):
        return beneath_relation(lat, "join_cover") == beneath_relation(lat, "scott_closed"), None

    _over(report, f"completions.beneath.lattices_le{lattice_max}", CHECKS["beneath_lattice"].statement,
          enumerate_lattices(lattice_max), same_beneath, timings)
    theorem_corpus = lambda: [*labelled_posets(4), *enumerate_posets(5, up_to_iso=True)]  # noqa: E731
    for name in THEOREMS:
        _over(report, f"completions.theorem.{name}", CHECKS[name].statement, theorem_corpus(),
              _check_fn(name, seed), timings)
    _over(report, "completions.wd_sets.labelled_le3", CHECKS["wd_sets"].statement, labelled_posets(3),
          _check_fn("wd_sets", seed), timings)

    def lemma_n(spec):
        z = ershov_sum(spec)
        pts = spec.points
        for a, za in enumerate(pts):
            for b, zb in enumerate(pts):
                if lemma_n_order(spec, za, zb) != z.order.leq(a, b):
                    return False, [za, zb]
        return True, None

    _over(report, "completions.lemma_n.corpus", CHECKS["lemma_n_corpus"].statement, ershov_corpus(), lemma_n, timings)


def run_countable(report: Report, bound: int, seed: int, timings: bool) -> None:
    nmax = max(bound, 2)
    _certificate(report, "countable.johnstone.kf", "J is a KF-set of itself via M_n",
                 lambda: johnstone_kf_certificate(nmax, seed), timings)
    _certificate(report, "countable.johnstone.not_tapered", "principal downsets refute pre-C-compactness of J",
                 lambda: johnstone_not_tapered_certificate(max(bound, 1), seed), timings)

    def normal_form():
        d = derive_normal_form(min(bound, 3))
        return d["agree"], d

    _over(report, "countable.johnstone.normal_form", "truncation downsets are exactly the normal forms",
          [None], lambda _: normal_form(), timings)
    _over(report, "countable.exampleL.closed_form", "closed-form order is the closure of the raw clauses",
          [min(bound, 4)], lambda b: (closed_form_matches_closure(b), None), timings)
    args = {
        "band_upset": {},
        "band_disjoint": {"pairs": 1000, "seed": seed},
        "claim1_prefix": {"n": min(1, bound)},
        "claim3_bf": {"seed": seed},
        "directed_refuter": {"seed": seed},
        "claim4": {"seed": seed},
    }
    for name, a in args.items():
        if bound < 2 and name in ("band_disjoint", "directed_refuter"):
            continue
        _certificate(report, f"countable.exampleL.{name}", f"example L certificate {name}",
                     lambda name=name, a=a: L_certificates(name, a, bound), timings)

    z = sum_example_space()

    def sum_checks(_):
        pts = z.points(bound)
        if any(z.clause2_fires(p, q) for p in pts for q in pts):
            return False, "clause 2 fired"
        small = min(bound, 2)
        spec = finite_sum_spec(z, small)
        es = ershov_sum(spec)
        t = z.truncate(small)
        n = len(spec.points)
        agree = all(es.order.leq(a, b) == t.leq(a, b) for a in range(n) for b in range(n)
                    if spec.points[a][1] == spec.points[b][1])
        return agree, None

    rec = _over(report, "countable.sum_example", "sum example: topless fibers, truncation matches finite sum",
                [None], sum_checks, timings)
    if rec.result == "pass":
        rec.result = "bounded-pass"
        rec.bound = bound


def paper_suite(bound: int = 6, seed: int = 42, random_count: int = 1000, lattice_max: int = 10,
                timings: bool = False, command: list | None = None) -> Report:
    report = Report(command or ["paper-suite", "--bound", str(bound), "--seed", str(seed)], seed)
    run_finite(report, seed, random_count, lattice_max, timings)
    run_countable(report, bound, seed, timings)
    return report
