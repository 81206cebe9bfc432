"""Acceptance criteria, each at its stated tolerance and time limit.

Every test prints one line ``criterion <n> <name>: PASS|FAIL (<seconds>s, limit <limit>s)``
straight to the terminal, so the lines also appear in a captured ``pytest -v`` log.
"""
from __future__ import annotations

import time

import pytest

from ordtopo.completions import (
    THEOREMS,
    beneath_relation,
    ershov_sum,
    lemma_n_order,
    pre_beneath_table,
    theorem_check,
)
from ordtopo.countable import L_certificates, johnstone_kf_certificate, johnstone_not_tapered_certificate
from ordtopo.finspace import enumerate_posets, space_predicate
from ordtopo.harness.checks import check_collapse, check_lemma_c
from ordtopo.harness.cli import main
from ordtopo.harness.corpus import ershov_corpus, labelled_posets, random_posets
from ordtopo.harness.rng import Rng
from ordtopo.lattices import enumerate_lattices

SEED = 42
RANDOM_COUNT = 10_000


@pytest.fixture
def verdict(capsys):
    """A recorder: the test registers failures, then `finish` prints the line and asserts."""

    class Verdict:
        def __init__(self):
            self.failures: list = []
            self.start = time.perf_counter()

        def fail(self, what) -> None:
            self.failures.append(what)

        def finish(self, number: int, name: str, limit: float) -> None:
            elapsed = time.perf_counter() - self.start
            ok = not self.failures and elapsed < limit
            with capsys.disabled():
                print(f"\ncriterion {number} {name}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s, limit {limit:.0f}s)")
            assert not self.failures, self.failures[:3]
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"

    return Verdict()


def finite_corpus():
    yield from labelled_posets(5)
    yield from random_posets(SEED, RANDOM_COUNT)


def test_criterion_1_finite_collapse(verdict):
    count = 0
    for p in finite_corpus():
        count += 1
        # kf_sets is run by both the fast path and, up to four points, brute force
        out = check_collapse(p, Rng(SEED))
        if not out.passed:
            verdict.fail((p.up, out.witness))
    assert count == 4473 + RANDOM_COUNT
    verdict.finish(1, "finite collapse", 60)


def test_criterion_2_lemma_c(verdict):
    for p in finite_corpus():
        out = check_lemma_c(p, Rng(SEED))
        if not out.passed:
            verdict.fail((p.up, out.witness))
    verdict.finish(2, "directed KF-sets", 30)


def test_criterion_3_brute_force_oracles(verdict):
    for p in labelled_posets(4):
        if pre_beneath_table(p, "hfamilies") != pre_beneath_table(p, "shortcut"):
            verdict.fail(("pre_beneath", p.up))
    lattices = 0
    for lat in enumerate_lattices(12):
        lattices += 1
        if beneath_relation(lat, "join_cover") != beneath_relation(lat, "scott_closed"):
            verdict.fail(("beneath", lat.poset.up))
    # lattices on 1..12 elements up to isomorphism
    assert lattices == sum((1, 1, 1, 2, 5, 15, 53, 222, 1078, 5994, 37622, 262776))
    corpus = [*labelled_posets(4), *enumerate_posets(5, up_to_iso=True)]
    for name in THEOREMS:
        for p in corpus:
            r = theorem_check(name, p)
            if not r.holds:
                verdict.fail((name, p.up, r.witness))
    verdict.finish(3, "beneath and theorem oracles", 120)


def test_criterion_4_ershov_corpus(verdict):
    count = 0
    for spec in ershov_corpus(3):
        count += 1
        z = ershov_sum(spec)
        pts = spec.points
        for a, za in enumerate(pts):
            for b, zb in enumerate(pts):
                if lemma_n_order(spec, za, zb) != z.order.leq(a, b):
                    verdict.fail((spec.base.up, [f.up for f in spec.fibers], za, zb))
    assert count == 1268
    verdict.finish(4, "sum order formula", 60)


def test_criterion_5_johnstone(verdict):
    kf = johnstone_kf_certificate(n_max=5, seed=SEED)
    if not kf.passed:
        verdict.fail(kf.to_json())
    groups = {s.name.split("_")[0] for s in kf.steps}
    if groups != {"i", "ii", "iii", "iv"}:
        verdict.fail(("sub-checks", sorted(groups)))
    nt = johnstone_not_tapered_certificate(seed=SEED)
    if not nt.passed:
        verdict.fail(nt.to_json())
    verdict.finish(5, "Johnstone certificates", 5)


def test_criterion_6_example_l(verdict):
    bound = 8
    runs = [
        ("band_upset", {}),
        ("band_disjoint", {"pairs": 1000, "seed": SEED}),
        *[("claim1_prefix", {"n": n}) for n in range(bound + 1)],
        ("claim3_bf", {"seed": SEED}),
        ("directed_refuter", {"seed": SEED}),
        ("claim4", {"seed": SEED}),
    ]
    for name, args in runs:
        r = L_certificates(name, args, bound)
        if not r.passed or r.bound != bound:
            verdict.fail((name, args, r.to_json()))
    verdict.finish(6, "example L certificates at N=8", 30)


def test_criterion_7_predicates(verdict):
    names = ("sober", "well_filtered", "locally_compact", "core_compact", "join_continuous")
    for p in labelled_posets(5):
        for name in names:
            v = space_predicate(name, p)
            if not v.holds:
                verdict.fail((name, p.up, v.witness))
    verdict.finish(7, "literal predicates on finite spaces", 120)


def test_criterion_8_determinism(verdict, capsys):
    outputs = []
    statuses = []
    for _ in range(2):
        statuses.append(main(["paper-suite", "--json", "--seed", str(SEED)]))
        outputs.append(capsys.readouterr().out)
    if outputs[0] != outputs[1]:
        verdict.fail("paper-suite JSON differs between runs")
    if statuses != [0, 0]:
        verdict.fail(("exit status", statuses))
    verdict.finish(8, "deterministic paper-suite JSON", 600)
