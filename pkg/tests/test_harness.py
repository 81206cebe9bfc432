from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordtopo.errors import CycleError, PosetSyntaxError, UnknownCheck
from ordtopo.finspace import FinitePoset
from ordtopo.harness import checks as checks_mod
from ordtopo.harness.checks import Check, CheckOutcome
from ordtopo.harness.cli import main
from ordtopo.harness.fuzz import fuzz, shrink
from ordtopo.harness.posetfile import parse_poset, parse_poset_file, serialize_poset
from ordtopo.harness.report import Record, Report
from ordtopo.harness.rng import Rng, random_poset

VEE_TEXT = "poset v1\nname: vee\nelements: 3\ncover: 0 2\ncover: 1 2\n"


@st.composite
def posets(draw, max_size=7):
    seed = draw(st.integers(0, 2**32))
    return random_poset(Rng(seed), draw(st.integers(1, max_size)), draw(st.floats(0, 1)))


def test_parse_examples():
    assert parse_poset("poset v1\nelements: 2\ncover: 0 1\n") == FinitePoset.chain(2)
    assert parse_poset("elements: 2") == FinitePoset.antichain(2)
    pf = parse_poset_file(VEE_TEXT + "# trailing comment\n")
    assert pf.name == "vee" and pf.poset.covers() == [(0, 2), (1, 2)]


def test_parse_cycle():
    with pytest.raises(CycleError) as exc:
        parse_poset("elements: 2\ncover: 0 1\ncover: 1 0\n")
    assert set(exc.value.cycle) == {0, 1}


@pytest.mark.parametrize(
    "text, line",
    [
        ("elements: 2\ncover: 0\n", 2),
        ("elements: x\n", 1),
        ("elements: 2\ncover: 0 5\n", 2),
        ("elements: 2\nbogus line\n", 2),
        ("elements: 2\nposet v1\n", 2),
        ("# only a comment\n", 0),
    ],
)
def test_parse_syntax_errors_carry_line(text, line):
    with pytest.raises(PosetSyntaxError) as exc:
        parse_poset(text)
    assert exc.value.line == line


@given(posets())
@settings(max_examples=60)
def test_serialize_round_trip(p):
    text = serialize_poset(p)
    assert parse_poset(text) == p
    assert serialize_poset(parse_poset(text)) == text


def test_random_poset_examples():
    assert random_poset(Rng(1), 1, 0.5).size == 1
    assert random_poset(Rng(3), 6, 0.0) == FinitePoset.antichain(6)
    assert random_poset(Rng(3), 6, 1.0) == FinitePoset.chain(6)
    assert random_poset(Rng(9), 7, 0.4) == random_poset(Rng(9), 7, 0.4)
    with pytest.raises(ValueError):
        random_poset(Rng(1), 0, 0.5)


def test_rng_sequence_is_fixed():
    a, b = Rng(42), Rng(42)
    assert [a.randint(0, 9) for _ in range(5)] == [b.randint(0, 9) for _ in range(5)]
    assert a.counter == 5
    assert Rng(42).fork(3).seed == Rng(42).fork(3).seed != Rng(42).fork(4).seed


@pytest.mark.parametrize(
    "trials, size, names",
    [
        (100, 8, ["lemma_c"]),
        (50, 4, ["thp", "coro_tapered", "prop_sup_union"]),
        (20, 3, ["lemma_n_corpus"]),
    ],
)
def test_fuzz_examples_pass(trials, size, names):
    report = fuzz(Rng(7), trials, size, names)
    assert report.exit_status == 0
    assert len(report.records) == trials * len(names)


def test_fuzz_unknown_check():
    with pytest.raises(UnknownCheck):
        fuzz(Rng(7), 1, 3, ["no_such_check"])
    with pytest.raises(ValueError):
        fuzz(Rng(7), 0, 3, ["lemma_c"])


def _has_three_chain(p: FinitePoset) -> bool:
    return any(p.leq(a, b) and p.leq(b, c) and len({a, b, c}) == 3
               for a in range(p.size) for b in range(p.size) for c in range(p.size))


@given(posets())
@settings(max_examples=60)
def test_shrink_returns_locally_minimal_failure(p):
    if not _has_three_chain(p):
        return
    small = shrink(p, _has_three_chain)
    assert _has_three_chain(small)
    for x in range(small.size):
        assert not _has_three_chain(small.induced(small.full & ~(1 << x)))
    assert small == FinitePoset.chain(3)


def test_fuzz_shrinks_failures(monkeypatch):
    def no_three_chain(p, rng):
        return CheckOutcome(not _has_three_chain(p), "three-chain")

    monkeypatch.setitem(checks_mod.CHECKS, "toy", Check("toy", "no three-chain", no_three_chain, 7))
    report = fuzz(Rng(5), 30, 7, ["toy"])
    assert report.exit_status == 1
    assert report.failed
    for rec in report.failed:
        assert rec.witness["poset"] == FinitePoset.chain(3)


def test_report_sorting_and_status():
    r = Report(["x"], 1)
    r.add(Record("b", "s", "pass", 1))
    r.add(Record("a", "s", "bounded-pass", 0, None, 4))
    assert [x.id for x in r.sorted_records()] == ["a", "b"]
    assert r.exit_status == 0
    doc = json.loads(r.to_json())
    assert doc["schema"] == 1 and doc["records"][0]["bound"] == 4
    assert "duration" not in doc["records"][0]
    r.add(Record("c", "s", "fail", 0, {"w": 1}))
    assert r.exit_status == 1


# CLI


@pytest.fixture
def vee_file(tmp_path):
    path = tmp_path / "vee.poset"
    path.write_text(VEE_TEXT)
    return str(path)


def test_cli_analyze(vee_file, capsys):
    assert main(["analyze", vee_file]) == 0
    out = capsys.readouterr().out
    assert "sober: true" in out and "well_filtered: true" in out
    assert main(["analyze", vee_file, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert all(doc["predicates"].values())


def test_cli_family_commands(vee_file, capsys):
    assert main(["kf", vee_file]) == 0
    assert capsys.readouterr().out.split() == ["{0}", "{1}", "{0,1,2}"]
    for cmd in ("irr", "precc", "tapered", "sobrify", "dcomplete"):
        assert main([cmd, vee_file]) == 0
    capsys.readouterr()


def test_cli_exit_codes(tmp_path, vee_file, capsys):
    bad = tmp_path / "cycle.poset"
    bad.write_text("elements: 2\ncover: 0 1\ncover: 1 0\n")
    assert main(["analyze", str(bad)]) == 2
    assert main(["analyze", str(tmp_path / "missing.poset")]) == 2
    assert main(["fuzz", "--checks", "nope"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["fuzz", "--trials", "0"])
    assert exc.value.code == 2
    assert main(["fuzz", "--trials", "5", "--max-size", "4", "--checks", "lemma_c,thp"]) == 0
    capsys.readouterr()


def test_cli_example_certify(capsys):
    assert main(["example", "exampleL", "--truncate", "5", "--certify"]) == 0
    out = capsys.readouterr().out
    assert "band_upset" in out and "bounded-pass" in out and "directed_refuter" in out
    assert main(["example", "cofinite", "--truncate", "5", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["truncation"]["points"]) == 6 and doc["truncation"]["covers"] == []


def test_cli_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("ORDTOPO_SEED", "11")
    assert main(["fuzz", "--trials", "2", "--max-size", "3", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 11


def test_cli_json_is_deterministic(capsys):
    argv = ["fuzz", "--trials", "20", "--max-size", "5", "--checks", "collapse,lemma_c", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
