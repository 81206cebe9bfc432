"""Command-line entry point: ``ordtopo <command> ...``.

Exit status is 0 on success, 1 when a check fails and 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from ..completions import d_completion, pre_c_compact_elements, sobrification, tapered_closed_sets
from ..countable import SPACES, L_certificates, format_point, johnstone_kf_certificate
from ..countable import johnstone_not_tapered_certificate
from ..countable.base import CertificateReport
from ..errors import OrdTopoError
from ..finspace import PREDICATES, FinitePoset, bits, irr_closed_sets, kf_sets, space_predicate
from .fuzz import fuzz
from .posetfile import read_poset
from .report import SCHEMA, Record, Report, jsonable
from .rng import Rng
from .suite import paper_suite

DEFAULT_SEED = 42


def default_seed() -> int:
    env = os.environ.get("ORDTOPO_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env, 0)
    except ValueError:
        raise SystemExit(f"ordtopo: ORDTOPO_SEED={env!r} is not an integer") from None


def fmt_set(p: FinitePoset, mask: int) -> str:
    return "{" + ",".join(str(p.label(x)) for x in bits(mask)) + "}"


def fmt_family(p: FinitePoset, fam) -> list[str]:
    return [fmt_set(p, a) for a in fam]


def emit(args, doc: dict, text: str) -> None:
    if args.json:
        print(json.dumps(jsonable({"schema": SCHEMA, **doc}), sort_keys=True, indent=2))
    else:
        print(text)


def cmd_analyze(args) -> int:
    pf = read_poset(args.file)
    p = pf.poset
    verdicts = {name: space_predicate(name, p) for name in PREDICATES}
    families = {
        "irr": irr_closed_sets(p),
        "kf": kf_sets(p),
        "tapered": tapered_closed_sets(p),
        "precc": pre_c_compact_elements(p),
    }
    sob = sobrification(p)
    dc = d_completion(p)
    doc = {
        "command": ["analyze", args.file],
        "name": pf.name,
        "elements": p.size,
        "predicates": {k: v.holds for k, v in verdicts.items()},
        "families": {k: fmt_family(p, v) for k, v in families.items()},
        "sobrification_points": len(sob.carrier),
        "d_completion_points": len(dc.carrier),
    }
    lines = [f"{pf.name or args.file}: {p.size} element(s)"]
    lines += [f"{k}: {str(v.holds).lower()}" for k, v in verdicts.items()]
    lines += [f"{k}: {' '.join(fmt_family(p, v))}" for k, v in families.items()]
    lines.append(f"sobrification: {len(sob.carrier)} point(s), homeomorphic: {str(sob.embedding_is_homeomorphism()).lower()}")
    lines.append(f"d-completion: {len(dc.carrier)} point(s), homeomorphic: {str(dc.embedding_is_homeomorphism()).lower()}")
    emit(args, doc, "\n".join(lines))
    return 0


FAMILY_COMMANDS = {
    "irr": irr_closed_sets,
    "kf": kf_sets,
    "precc": pre_c_compact_elements,
    "tapered": tapered_closed_sets,
}


def cmd_family(args) -> int:
    p = read_poset(args.file).poset
    fam = FAMILY_COMMANDS[args.command](p)
    out = fmt_family(p, fam)
    emit(args, {"command": [args.command, args.file], "family": out}, "\n".join(out))
    return 0


def cmd_space(args) -> int:
    p = read_poset(args.file).poset
    space = sobrification(p) if args.command == "sobrify" else d_completion(p)
    q = space.order
    points = fmt_family(p, space.carrier)
    covers = [[points[i], points[j]] for i, j in q.covers()]
    homeo = space.embedding_is_homeomorphism()
    doc = {"command": [args.command, args.file], "points": points, "covers": covers, "homeomorphic": homeo}
    lines = [f"points: {' '.join(points)}"]
    lines += [f"cover: {a} < {b}" for a, b in covers]
    lines.append(f"embedding is a homeomorphism: {str(homeo).lower()}")
    emit(args, doc, "\n".join(lines))
    return 0


def _print_report(args, report: Report) -> int:
    if args.json:
        print(report.to_json(timings=args.timings))
    else:
        print(report.to_text())
    return report.exit_status


def cmd_fuzz(args) -> int:
    checks = [c for c in args.checks.split(",") if c]
    report = fuzz(Rng(args.seed), args.trials, args.max_size, checks, timings=args.timings)
    report.command = ["fuzz", "--trials", str(args.trials), "--max-size", str(args.max_size),
                      "--seed", str(args.seed), "--checks", ",".join(checks)]
    return _print_report(args, report)


def _example_certificates(kind: str, bound: int, seed: int) -> list[CertificateReport]:
    if kind == "johnstone":
        return [johnstone_kf_certificate(max(bound, 2), seed), johnstone_not_tapered_certificate(max(bound, 1), seed)]
    if kind == "exampleL":
        reps = [L_certificates("band_upset", {}, bound)]
        if bound >= 2:
            reps.append(L_certificates("directed_refuter", {"seed": seed, "samples": 20}, bound))
        reps.append(L_certificates("claim1_prefix", {"n": min(1, bound)}, bound))
        return reps
    return []


def cmd_example(args) -> int:
    space = SPACES[args.space]()
    t = space.truncate(args.truncate)
    labels = [format_point(x) for x in t.labels]
    covers = [[labels[i], labels[j]] for i, j in t.covers()]
    report = Report(["example", args.space, "--truncate", str(args.truncate)] + (["--certify"] if args.certify else []),
                    args.seed)
    if args.certify:
        if args.space in ("sumZ", "ershov_sum_lazy"):
            pts = space.points(args.truncate)
            fired = [(p, q) for p in pts for q in pts if space.clause2_fires(p, q)]
            report.add(Record("sumZ.clause2_never_fires", "fibers have no top", "fail" if fired else "bounded-pass",
                              0, fired[:1] or None, args.truncate))
        for cert in _example_certificates(args.space, args.truncate, args.seed):
            report.add(Record(f"{args.space}.{cert.name}", cert.name, cert.result, 0,
                              cert.data or None if cert.passed else cert.to_json(), cert.bound))
    if args.json:
        doc = json.loads(report.to_json(timings=args.timings))
        doc["truncation"] = {"points": labels, "covers": covers}
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(f"{args.space} truncated at {args.truncate}: {t.size} point(s), {len(covers)} cover(s)")
        if t.size <= 40:
            for a, b in covers:
                print(f"  {a} < {b}")
        if report.records:
            print(report.to_text(verbose=True))
    return report.exit_status


def cmd_suite(args) -> int:
    command = ["paper-suite", "--bound", str(args.bound), "--seed", str(args.seed)]
    start = time.perf_counter()
    report = paper_suite(args.bound, args.seed, args.random_count, args.lattice_max, args.timings, command)
    status = _print_report(args, report)
    if args.timings and not args.json:
        print(f"elapsed: {time.perf_counter() - start:.1f}s")
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=None, help="random seed (default: $ORDTOPO_SEED or 42)")
    common.add_argument("--timings", action="store_true", help="include durations (breaks byte-identical output)")

    parser = argparse.ArgumentParser(prog="ordtopo", description="Finite and countable order-topology workbench.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="space predicates and completion summaries")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)
    for name in FAMILY_COMMANDS:
        p = sub.add_parser(name, parents=[common], help=f"list the {name} closed sets")
        p.add_argument("file")
        p.set_defaults(func=cmd_family)
    for name in ("sobrify", "dcomplete"):
        p = sub.add_parser(name, parents=[common], help="build the completion as a space of closed sets")
        p.add_argument("file")
        p.set_defaults(func=cmd_space)

    p = sub.add_parser("fuzz", parents=[common], help="random testing of named checks")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-size", type=int, default=6)
    p.add_argument("--checks", default="lemma_c")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("example", parents=[common], help="truncate and certify a countable example")
    p.add_argument("space", choices=["johnstone", "exampleL", "cofinite", "sumZ"])
    p.add_argument("--truncate", type=int, default=3, metavar="N")
    p.add_argument("--certify", action="store_true")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("paper-suite", parents=[common], help="run every regression check")
    p.add_argument("--bound", type=int, default=6)
    p.add_argument("--random-count", type=int, default=1000, help="random posets of sizes 6-8")
    p.add_argument("--lattice-max", type=int, default=10, help="largest lattice size for the beneath check")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is None:
        args.seed = default_seed()
    for attr in ("trials", "truncate", "bound"):
        value = getattr(args, attr, None)
        if value is not None and value < (1 if attr == "trials" else 0):
            parser.error(f"--{attr} must be {'positive' if attr == 'trials' else 'nonnegative'}")
    if getattr(args, "max_size", 1) < 1:
        parser.error("--max-size must be positive")
    try:
        return args.func(args)
    except (OrdTopoError, OSError) as exc:
        print(f"ordtopo: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
