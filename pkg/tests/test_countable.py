from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordtopo.completions import ershov_sum
from ordtopo.countable import (
    INF,
    J,
    L,
    CofiniteNat,
    JClosedSet,
    L_certificates,
    directed_refuter,
    finite_sum_spec,
    format_point,
    greatest_element_refuter,
    j_closed_algebra,
    johnstone_kf_certificate,
    johnstone_not_tapered_certificate,
    lazy_leq,
    parse_point,
    raw_leq,
    sum_example_space,
    sup_of_directed,
    truncate,
)
from ordtopo.countable.example_l import closed_form_matches_closure, common_upper_bounds, prefix_fixpoint
from ordtopo.countable.johnstone import (
    M,
    derive_normal_form,
    finite_subcover,
    missed_M_index,
    random_closed_set,
)
from ordtopo.errors import InvariantViolation, MalformedArgs, MalformedPoint, UnknownCertificate
from ordtopo.finspace import validate_poset

SPACES = [J, L, CofiniteNat(), sum_example_space()]


def test_johnstone_order_examples():
    assert lazy_leq(J, (2, 3), (2, 7))
    assert lazy_leq(J, (2, 3), (5, INF))
    assert not lazy_leq(J, (2, 6), (5, INF))
    assert not lazy_leq(J, (2, INF), (3, INF))


def test_example_l_order_examples():
    assert lazy_leq(L, (1, 1, 2), (1, 2, 2))
    assert lazy_leq(L, (1, 4, 3), (2, 3, INF))
    # a top never climbs to the next band
    assert not lazy_leq(L, (1, 4, INF), (2, 9, INF))


def test_raw_clauses_are_not_transitive():
    assert raw_leq((1, 0, 2), (1, 2, 2)) and raw_leq((1, 2, 2), (1, 2, 5))
    assert not raw_leq((1, 0, 2), (1, 2, 5))
    assert lazy_leq(L, (1, 0, 2), (1, 2, 5))


@pytest.mark.parametrize("bound", [1, 2, 3, 4])
def test_closed_form_is_closure_of_raw_clauses(bound):
    assert closed_form_matches_closure(bound)


def test_cofinite_order_is_discrete():
    assert not lazy_leq(CofiniteNat(), 3, 5)
    assert lazy_leq(CofiniteNat(), 4, 4)
    t = truncate(CofiniteNat(), 5)
    assert t.size == 6 and t.covers() == []


def test_malformed_points():
    with pytest.raises(MalformedPoint):
        lazy_leq(J, (1, -1), (1, 1))
    with pytest.raises(MalformedPoint):
        lazy_leq(L, (1, 1), (1, 1, 1))
    with pytest.raises(MalformedPoint):
        lazy_leq(CofiniteNat(), INF, 1)


def test_truncation_examples():
    tj = truncate(J, 1)
    assert tj.labels == ((0, 0), (0, 1), (0, INF), (1, 0), (1, 1), (1, INF))
    for a, p in enumerate(tj.labels):
        for b, q in enumerate(tj.labels):
            assert tj.leq(a, b) == lazy_leq(J, p, q)
    assert truncate(L, 0).labels == ((0, 0, 0), (0, 0, INF))


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.kind)
def test_truncations_are_posets_and_nested(space):
    small, big = space.truncate(2), space.truncate(3)
    assert validate_poset(small.leq_table()) == []
    assert validate_poset(big.leq_table()) == []
    index = {p: i for i, p in enumerate(big.labels)}
    for a, p in enumerate(small.labels):
        for b, q in enumerate(small.labels):
            assert small.leq(a, b) == big.leq(index[p], index[q])


@pytest.mark.parametrize("space", SPACES, ids=lambda s: s.kind)
@given(seed=st.integers(0, 2**32))
@settings(max_examples=15, deadline=None)
def test_lazy_order_is_partial_order_on_samples(space, seed):
    rng = random.Random(seed)
    pool = space.points(7)
    sample = rng.sample(pool, min(50, len(pool)))
    leq = [[space.leq(p, q) for q in sample] for p in sample]
    assert validate_poset(leq) == []


def test_point_format_round_trip():
    for p in [(1, 4, INF), (0, 0), (3, INF), 5]:
        assert parse_point(format_point(p)) == p
    assert format_point((1, 4, INF)) == "(1,4,inf)"


# Johnstone closed sets


def test_j_closed_examples():
    a = JClosedSet.make(tops=[2], default=5)
    assert j_closed_algebra("contains", a, (1, 4))
    u = j_closed_algebra("union", JClosedSet.principal_down((0, 3)), JClosedSet.principal_down((1, INF)))
    assert u.tops == {1} and u.default == 1 and u.exceptions == ((0, 3),)
    assert j_closed_algebra("meet", a, a) == a
    assert j_closed_algebra("tops", a) == {2}
    assert not j_closed_algebra("is_all", a)
    assert j_closed_algebra("is_all", JClosedSet.everything())


def test_j_closed_invariants_refuse():
    with pytest.raises(InvariantViolation):
        JClosedSet.make(tops=[3], default=1)
    with pytest.raises(InvariantViolation):
        JClosedSet.make(default=INF)
    with pytest.raises(InvariantViolation):
        JClosedSet(False, frozenset({4}), 4, ((0, 2),))
    with pytest.raises(MalformedArgs):
        j_closed_algebra("complement", JClosedSet.empty())


@pytest.mark.parametrize("bound", [1, 2, 3])
def test_normal_form_rederived_from_truncations(bound):
    d = derive_normal_form(bound)
    assert d["agree"] and d["downsets"] == d["forms"] == d["readable"]


@given(seed=st.integers(0, 2**32), bound=st.integers(1, 8))
@settings(max_examples=60, deadline=None)
def test_j_algebra_matches_truncated_set_operations(seed, bound):
    rng = random.Random(seed)
    a, b = random_closed_set(rng, 8, 8), random_closed_set(rng, 8, 8)
    t = J.truncate(bound)
    ma, mb = a.to_mask(bound), b.to_mask(bound)
    assert t.closure(ma) == ma and t.closure(mb) == mb
    assert a.union(b).to_mask(bound) == ma | mb
    assert a.meet(b).to_mask(bound) == ma & mb
    for p in J.points(bound):
        assert a.union(b).contains(p) == (a.contains(p) or b.contains(p))


def test_proper_closed_set_misses_some_m():
    c = JClosedSet.make(tops=[0, 1], default=1)
    assert missed_M_index(c) == 2
    assert not any(c.contains((m, INF)) for m in range(2, 50))
    assert missed_M_index(JClosedSet.everything()) is None


def test_single_member_family_has_small_meeting_set():
    # down(0, inf) meets M_0 and is far from all of J
    d = JClosedSet.principal_down((0, INF))
    assert d.contains((0, INF)) and M(0)((0, INF))
    assert not d.contains((1, INF)) and not d.is_all


def test_finite_subcover():
    cover = [JClosedSet.make(tops=[0, 3], default=3), JClosedSet.make(default=0), JClosedSet.principal_down((9, 2))]
    chosen = finite_subcover(1, cover)
    assert chosen == [1] or chosen == [0, 1]


def test_johnstone_certificates():
    kf = johnstone_kf_certificate(5)
    assert kf.passed and len({s.name.split("_")[0] for s in kf.steps}) == 4
    nt = johnstone_not_tapered_certificate()
    assert nt.passed
    assert nt.result == "bounded-pass"
    with pytest.raises(MalformedArgs):
        johnstone_kf_certificate(1)


def test_refuter_and_sups():
    assert greatest_element_refuter((2, 3)) == (3, 0)
    assert not lazy_leq(J, (3, 0), (2, 3))
    assert greatest_element_refuter((2, INF)) == (3, INF)
    assert not lazy_leq(J, (3, INF), (2, INF))
    assert sup_of_directed([(1, 0), (1, 1), (1, 2)]) == (1, 2)
    assert sup_of_directed(("column", 4, 2, [(4, 0)])) == (4, INF)
    with pytest.raises(MalformedArgs):
        sup_of_directed([(1, 0), (2, 0)])


# example L


def test_band_upset_single_point():
    r = L_certificates("band_upset", {"point": (1, 1, 1)}, 6)
    assert r.passed and r.result == "bounded-pass" and r.bound == 6


def test_directed_refuter_example():
    p, q = directed_refuter([(1, 1, 1), (4, 2, 3)])
    assert (p, q) == ((1, 1, 1), (4, 2, 3))
    assert common_upper_bounds(p, q, 8) == []
    with pytest.raises(MalformedArgs):
        directed_refuter([(1, 1, 1), (2, 0, 0)])


def test_claim1_prefix_fixpoint():
    states, log = prefix_fixpoint(1, 4)
    assert states == [2, 2, 0]
    assert all(e["enumerated"] for e in log if "enumerated" in e)
    r = L_certificates("claim1_prefix", {"n": 1}, 4)
    kinds = {s.name: s.kind for s in r.steps}
    assert r.passed and kinds["fixpoint_is_prefix"] == "rule" and kinds["down_steps_enumerated"] == "bounded"


def test_l_certificates_at_small_bound():
    for name in ("band_upset", "band_disjoint", "claim3_bf", "directed_refuter", "claim4"):
        r = L_certificates(name, {}, 5)
        assert r.passed, (name, r.to_json())


def test_l_certificate_errors():
    with pytest.raises(UnknownCertificate):
        L_certificates("claim9", {}, 4)
    with pytest.raises(MalformedArgs):
        L_certificates("claim1_prefix", {}, 4)
    with pytest.raises(MalformedArgs):
        L_certificates("band_upset", {"point": (1, 9, 9)}, 4)


# the sum example


def test_sum_example_order():
    z = sum_example_space()
    assert lazy_leq(z, (3, 2), (5, 2))
    assert not lazy_leq(z, (3, 2), (9, 4))
    pts = z.points(6)
    assert not any(z.clause2_fires(p, q) for p in pts for q in pts)


def test_sum_truncation_agrees_with_finite_sum():
    z = sum_example_space()
    spec = finite_sum_spec(z, 2)
    es = ershov_sum(spec)
    t = z.truncate(2)
    assert tuple(t.labels) == spec.points
    n = len(spec.points)
    for a in range(n):
        for b in range(n):
            if spec.points[a][1] == spec.points[b][1]:
                assert es.order.leq(a, b) == t.leq(a, b)
