from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordtopo.errors import (
    CarrierTooLarge,
    EmptyFamily,
    EmptyMember,
    InvalidFamily,
    InvalidPoset,
    InvalidTopology,
    NotT0,
    OutOfRange,
    UnknownPredicate,
)
from ordtopo.finspace import (
    PREDICATES,
    FinitePoset,
    FiniteTopology,
    alexandrov_topology,
    bits,
    closure,
    compact_saturated_sets,
    enumerate_posets,
    irr_closed_sets,
    is_compact,
    is_directed,
    is_filtered,
    kf_sets,
    lemma_c_check,
    min_closed_meeting,
    min_closed_meeting_scan,
    space_predicate,
    specialization_order,
    validate_poset,
    way_below_opens,
)
from ordtopo.harness.rng import Rng, random_poset

A, B, C = 1, 2, 4
VEE = FinitePoset([A | C, B | C, C])  # a, b below c
CHAIN2 = FinitePoset.chain(2)
ANTI2 = FinitePoset.antichain(2)
POINT = FinitePoset.chain(1)


@st.composite
def posets(draw, max_size=6):
    seed = draw(st.integers(0, 2**32))
    size = draw(st.integers(1, max_size))
    density = draw(st.floats(0, 1))
    return random_poset(Rng(seed), size, density)


def test_validate_poset_witnesses():
    assert validate_poset([[True, True], [False, True]]) == []
    d = validate_poset([[True, True], [True, True]])
    assert [(x.axiom, x.witness) for x in d] == [("antisymmetry", (0, 1))]
    t = [[True, True, False], [False, True, True], [False, False, True]]
    assert [(x.axiom, x.witness) for x in validate_poset(t)] == [("transitivity", (0, 1, 2))]
    r = validate_poset([[False]])
    assert r[0].axiom == "reflexivity"


def test_from_leq_rejects_bad_relation():
    with pytest.raises(InvalidPoset) as exc:
        FinitePoset.from_leq([[True, True], [True, True]])
    assert exc.value.diagnostics[0].axiom == "antisymmetry"


def test_from_pairs_closes_transitively():
    p = FinitePoset.from_pairs(3, [(0, 1), (1, 2)])
    assert p == FinitePoset.chain(3)
    with pytest.raises(InvalidPoset):
        FinitePoset.from_pairs(2, [(0, 1), (1, 0)])
    with pytest.raises(OutOfRange):
        FinitePoset.from_pairs(2, [(0, 5)])


def test_labelled_poset_counts():
    assert [sum(1 for _ in enumerate_posets(n)) for n in range(1, 6)] == [1, 3, 19, 219, 4231]


def test_isomorphism_class_counts():
    assert [sum(1 for _ in enumerate_posets(n, up_to_iso=True)) for n in range(1, 7)] == [1, 2, 5, 16, 63, 318]


def test_specialization_order_examples():
    sierpinski = FiniteTopology(2, frozenset({0, B, A | B}))
    assert specialization_order(sierpinski) == CHAIN2
    discrete = FiniteTopology(2, frozenset({0, A, B, A | B}))
    assert specialization_order(discrete) == ANTI2
    with pytest.raises(NotT0):
        specialization_order(FiniteTopology(2, frozenset({0, A | B})))
    with pytest.raises(InvalidTopology):
        specialization_order(FiniteTopology(2, frozenset({A, B, A | B})))


def test_alexandrov_topology_examples():
    assert alexandrov_topology(POINT).opens == {0, 1}
    assert alexandrov_topology(CHAIN2).opens == {0, B, A | B}
    assert alexandrov_topology(ANTI2).opens == {0, A, B, A | B}


@given(posets())
def test_alexandrov_round_trip(p):
    assert specialization_order(alexandrov_topology(p)) == p


def test_closure_examples():
    assert closure(CHAIN2, 0) == 0
    assert closure(CHAIN2, B) == A | B
    assert closure(VEE, C) == A | B | C
    with pytest.raises(OutOfRange):
        closure(CHAIN2, 8)


def test_directed_examples():
    assert not is_directed(VEE, 0)
    assert is_directed(FinitePoset.chain(4), 0b1011)
    assert not is_directed(VEE, A | B)
    assert is_directed(VEE, A | B | C)
    assert is_filtered(VEE, A | C)
    assert not is_filtered(VEE, A | B | C)


def test_irreducible_closed_sets():
    assert set(irr_closed_sets(VEE)) == {A, B, A | B | C}
    assert irr_closed_sets(POINT) == (1,)
    chain = FinitePoset.chain(3)
    assert set(irr_closed_sets(chain)) == set(chain.down)


def test_compact_saturated_sets():
    assert set(compact_saturated_sets(CHAIN2)) == {0, B, A | B}
    assert len(compact_saturated_sets(ANTI2)) == 4
    assert set(compact_saturated_sets(POINT)) == {0, 1}


def test_is_compact_is_literal():
    # every subset of a finite space is compact
    for s in range(8):
        assert is_compact(VEE, s)


def test_min_closed_meeting_examples():
    assert min_closed_meeting(VEE, [A | C]) == (A,)
    assert set(min_closed_meeting(VEE, [A | B | C])) == {A, B}
    assert min_closed_meeting(VEE, [C]) == (A | B | C,)


def test_min_closed_meeting_rejects_bad_families():
    with pytest.raises(EmptyFamily):
        min_closed_meeting(VEE, [])
    with pytest.raises(EmptyMember):
        min_closed_meeting(VEE, [0])
    with pytest.raises(InvalidFamily):
        min_closed_meeting(VEE, [A])  # {a} is not saturated


@given(posets(5))
@settings(max_examples=60)
def test_min_closed_meeting_matches_scan(p):
    for k in compact_saturated_sets(p):
        if k:
            assert min_closed_meeting(p, [k]) == min_closed_meeting_scan(p, [k])


def test_kf_examples():
    assert set(kf_sets(VEE)) == {A, B, A | B | C}
    assert set(kf_sets(ANTI2)) == {A, B}
    assert kf_sets(POINT) == (1,)


def test_kf_fast_matches_brute_force_up_to_four():
    for n in range(1, 5):
        for p in enumerate_posets(n):
            assert kf_sets(p) == kf_sets(p, method="brute")
            assert kf_sets(p, countable_only=True) == kf_sets(p)


def test_kf_brute_force_is_capped():
    with pytest.raises(CarrierTooLarge):
        kf_sets(FinitePoset.chain(5), method="brute")


@given(posets(7))
@settings(max_examples=80)
def test_collapse_to_point_closures(p):
    want = set(p.down)
    assert set(irr_closed_sets(p)) == want
    assert set(kf_sets(p)) == want


@given(posets(6))
@settings(max_examples=60)
def test_predicates_hold_on_finite_spaces(p):
    for name in PREDICATES:
        v = space_predicate(name, p)
        assert v.holds, (name, v.witness)


def test_daw_on_vee():
    assert space_predicate("dAW", VEE).holds


def test_unknown_predicate():
    with pytest.raises(UnknownPredicate):
        space_predicate("compactish", VEE)


def test_way_below_union_recovers_each_open():
    # every open of a finite space is compact, hence way below itself
    for p in (VEE, CHAIN2, FinitePoset.chain(4)):
        wb = way_below_opens(p)
        assert set(wb) == set(p.saturated_sets)
        assert all(below == v for v, below in wb.items())


def test_lemma_c_examples():
    for p in (VEE, ANTI2, POINT):
        r = lemma_c_check(p)
        assert r.holds and r.checked == len(set(p.down))


def test_closed_and_saturated_sets_are_complements():
    for p in enumerate_posets(4):
        full = p.full
        assert {full & ~c for c in p.closed_sets} == set(p.saturated_sets)


def test_antichains_cap():
    with pytest.raises(CarrierTooLarge):
        FinitePoset.antichain(21).antichains


def test_induced_and_relabel():
    sub = VEE.induced(A | C)
    assert sub == CHAIN2
    swapped = VEE.relabel([1, 0, 2])
    assert swapped == VEE
    assert list(bits(0b1010)) == [1, 3]
