"""The three-coordinate counterexample space L = N x N x (N + {inf}).

A point ``(n, i, j)`` sits in band ``n``, column ``i``, height ``j``.  The
generating clauses are

* ``n1 == n2, i1 == i2, j1 <= j2``;
* ``n1 == n2, i2 == j2 == j1, i1 <= i2``;
* ``n2 == n1 + 1, j1 <= i2, j2 == inf``.

They are not transitive as written: ``(1,0,2) <= (1,2,2) <= (1,2,5)`` but the
clauses do not relate ``(1,0,2)`` to ``(1,2,5)``.  The order used here is
their reflexive-transitive closure, which has the closed form

* (a) ``n1 == n2, i1 == i2, j1 <= j2``;
* (b) ``n1 == n2``, ``j1`` finite, ``i2 >= max(i1, j1)``, ``j2 >= i2``;
* (c) ``n2 == n1 + 1``, ``j1`` finite, ``j1 <= i2``, ``j2 == inf``.

The closed form is checked against the closure of the raw clauses on
truncations.  Bands are numbered from 0 and ``B_n`` is bands ``0..n``.
"""
from __future__ import annotations

import random
from typing import Sequence

from ..errors import MalformedArgs, MalformedPoint, UnknownCertificate
from ..finspace import FinitePoset, bits, mask_of
from .base import INF, CertificateReport, LazySpace, format_point, heights, is_height, is_nat


class ExampleL(LazySpace):
    kind = "exampleL"

    def check_point(self, p):
        if not (isinstance(p, tuple) and len(p) == 3 and is_nat(p[0]) and is_nat(p[1]) and is_height(p[2])):
            raise MalformedPoint(f"{p!r} is not a point (band, column, height) of L")
        return p

    def _leq(self, p, q) -> bool:
        return leq_clause(p, q) is not None

    def points(self, bound: int) -> list:
        return [(n, i, j) for n in range(bound + 1) for i in range(bound + 1) for j in heights(bound)]

    def band_points(self, band: int, bound: int) -> list:
        return [(band, i, j) for i in range(bound + 1) for j in heights(bound)]


L = ExampleL()

# how far each closed-form clause moves the band
CLAUSE_BAND_SHIFT = {"a": 0, "b": 0, "c": 1}


def leq_clause(p, q) -> str | None:
    """Name of the first closed-form clause relating ``p <= q``, or None."""
    (n1, i1, j1), (n2, i2, j2) = p, q
    if n1 == n2:
        if i1 == i2 and j1 <= j2:
            return "a"
        if j1 != INF and i2 >= max(i1, j1) and j2 >= i2:
            return "b"
        return None
    if n2 == n1 + 1 and j1 != INF and j1 <= i2 and j2 == INF:
        return "c"
    return None


def raw_leq(p, q) -> bool:
    """The three generating clauses, without closing under transitivity."""
    (n1, i1, j1), (n2, i2, j2) = p, q
    return (
        (n1 == n2 and i1 == i2 and j1 <= j2)
        or (n1 == n2 and i2 == j2 == j1 and i1 <= i2)
        or (n2 == n1 + 1 and j1 <= i2 and j2 == INF)
    )


def raw_closure(bound: int) -> FinitePoset:
    """Reflexive-transitive closure of :func:`raw_leq` on the truncation."""
    pts = L.points(bound)
    pairs = [(x, y) for x, p in enumerate(pts) for y, q in enumerate(pts) if x != y and raw_leq(p, q)]
    return FinitePoset.from_pairs(len(pts), pairs, labels=pts)


def closed_form_matches_closure(bound: int) -> bool:
    return L.truncate(bound).up == raw_closure(bound).up


def band_mask(pts: Sequence, bands) -> int:
    bands = set(bands)
    return mask_of(k for k, p in enumerate(pts) if p[0] in bands)


# certificates


def _band_upset(args: dict, bound: int) -> CertificateReport:
    rep = CertificateReport("band_upset")
    trunc = L.truncate(bound)
    pts = trunc.labels
    if "point" in args:
        p = L.check_point(tuple(args["point"]))
        if max(v for v in p if v != INF) > bound:
            raise MalformedArgs(f"{format_point(p)} lies beyond the bound {bound}")
        targets = [pts.index(p)]
    else:
        targets = range(len(pts))
    # every clause keeps the band or moves it up by one
    rule_ok = set(CLAUSE_BAND_SHIFT.values()) <= {0, 1}
    rep.add("clause_band_shift", "rule", rule_ok, "clauses (a),(b) keep the band, (c) adds one")
    ok = True
    for x in targets:
        n = pts[x][0]
        if trunc.up[x] & ~band_mask(pts, (n, n + 1)):
            ok = False
            rep.data["witness"] = format_point(pts[x])
            break
        for y in bits(trunc.up[x]):
            ok &= pts[y][0] - n == CLAUSE_BAND_SHIFT[leq_clause(pts[x], pts[y])]
    rep.add("upsets_within_two_bands", "bounded", ok,
            f"checked {len(targets)} point(s) exhaustively against all points with coordinates <= {bound}", bound)
    return rep


def _band_disjoint(args: dict, bound: int) -> CertificateReport:
    if bound < 2:
        raise MalformedArgs("band_disjoint needs bound >= 2")
    rep = CertificateReport("band_disjoint")
    pairs = int(args.get("pairs", 1000))
    rng = random.Random(args.get("seed", 0))
    rep.add("symbolic_from_band_upset", "rule", set(CLAUSE_BAND_SHIFT.values()) <= {0, 1},
            "up-sets lie in bands {n, n+1} and {m, m+1}, disjoint when m >= n+2")
    trunc = L.truncate(bound)
    index = {p: k for k, p in enumerate(trunc.labels)}
    ok = True
    for _ in range(pairs):
        n = rng.randint(0, bound - 2)
        m = rng.randint(n + 2, bound)
        p = (n, rng.randint(0, bound), rng.choice(heights(bound)))
        q = (m, rng.randint(0, bound), rng.choice(heights(bound)))
        if trunc.up[index[p]] & trunc.up[index[q]]:
            ok = False
            rep.data["witness"] = [format_point(p), format_point(q)]
            break
    rep.add("sampled_pairs_disjoint", "bounded", ok, f"{pairs} sampled pairs in bands >= 2 apart", bound)
    return rep


# band states for the prefix claim
EMPTY, FINITE, FULL = 0, 1, 2
STATE_NAMES = {EMPTY: "empty", FINITE: "finite-heights", FULL: "full"}


def down_rule(states: Sequence[int]) -> list[int]:
    """Down-closure on band descriptions.

    Below a finite-height point ``(n, i, j)`` lie only finite-height points of
    band ``n`` (clauses (a), (b)); below ``(n, i, inf)`` lie finite-height
    points of band ``n-1`` with ``j1 <= i`` (clause (c)), so a full band puts
    every finite-height point of the band beneath it in the set.
    """
    out = list(states)
    for n, s in enumerate(states):
        if s == FULL and n > 0:
            out[n - 1] = max(out[n - 1], FINITE)
    return out


def column_sup_rule(states: Sequence[int]) -> list[int]:
    """A column holding every finite height holds its supremum ``(n, i, inf)``."""
    return [FULL if s == FINITE else s for s in states]


def concretize(states: Sequence[int], bound: int) -> int:
    pts = L.points(bound)
    return mask_of(k for k, (n, _, j) in enumerate(pts)
                   if n < len(states) and (states[n] == FULL or (states[n] == FINITE and j != INF)))


def prefix_fixpoint(n: int, bound: int | None = None) -> tuple[list[int], list[dict]]:
    """Iterate the two rules from ``A_n`` minus its maximal points.

    Returns the final band states (bands ``0..n+1``) and a log of steps; when
    ``bound`` is given, each down-closure step is compared with the actual
    down-closure in the truncation.
    """
    states = [EMPTY] * (n + 2)
    states[n] = FINITE
    trunc = L.truncate(bound) if bound is not None else None
    log = []
    while True:
        d = down_rule(states)
        entry = {"rule": "down", "states": [STATE_NAMES[s] for s in d]}
        if trunc is not None:
            entry["enumerated"] = trunc.closure(concretize(states, bound)) == concretize(d, bound)
        log.append(entry)
        c = column_sup_rule(d)
        log.append({"rule": "column_sup", "states": [STATE_NAMES[s] for s in c]})
        if c == states:
            return states, log
        states = c


def _claim1_prefix(args: dict, bound: int) -> CertificateReport:
    try:
        n = int(args["n"])
    except (KeyError, TypeError, ValueError):
        raise MalformedArgs("claim1_prefix needs an integer 'n'") from None
    if n < 0 or n > bound:
        raise MalformedArgs("need 0 <= n <= bound")
    rep = CertificateReport("claim1_prefix")
    trunc = L.truncate(bound)
    pts = trunc.labels
    band = band_mask(pts, [n])
    maximal = trunc.maximal(trunc.full) & band
    rep.add("max_band_is_inf_heights", "bounded",
            maximal == mask_of(k for k, p in enumerate(pts) if p[0] == n and p[2] == INF),
            "maximal points of the band are its infinite-height points", bound)
    # directedness: (n,k,k) with k >= every coordinate bounds any two finite-height points
    rng = random.Random(n)
    ok = True
    for _ in range(200):
        p = (n, rng.randint(0, bound), rng.randint(0, bound))
        q = (n, rng.randint(0, bound), rng.randint(0, bound))
        k = max(p[1:] + q[1:])
        ok &= L._leq(p, (n, k, k)) and L._leq(q, (n, k, k))
    rep.add("band_minus_max_directed", "symbolic", ok, "(n,k,k) with k the largest coordinate is an upper bound")
    states, log = prefix_fixpoint(n, bound)
    want = [FULL] * (n + 1) + [EMPTY]
    rep.add("fixpoint_is_prefix", "rule", states == want,
            "down-closure and column-sup rules iterated to a fixpoint: " + ",".join(STATE_NAMES[s] for s in states))
    checks = [e["enumerated"] for e in log if "enumerated" in e]
    rep.add("down_steps_enumerated", "bounded", all(checks),
            f"{len(checks)} down-closure steps compared with the truncation", bound)
    rep.data["steps"] = log
    return rep


def bf_contains(chosen: dict, p) -> bool:
    """Membership in the union of ``down(n, chosen[n], inf)``."""
    return any(L._leq(p, (n, i, INF)) for n, i in chosen.items())


def bf_band_profile(chosen: dict, m: int) -> dict:
    """Symbolic description of band ``m`` of the union.

    Its points are column ``chosen[m]`` in full, finite-height points with
    column and height at most ``chosen[m]``, and finite-height points with
    height at most ``chosen[m+1]``.
    """
    full_col = chosen.get(m)
    bound = max([chosen[k] for k in (m, m + 1) if k in chosen], default=-1)
    return {"full_column": full_col, "height_bound": bound}


def bf_column_sup_closed(chosen: dict, m: int) -> bool:
    """Columns of band ``m`` whose heights are unbounded contain their top.

    Outside the full column, heights are bounded by ``height_bound``, so
    probing one height past it decides unboundedness for every column.
    """
    prof = bf_band_profile(chosen, m)
    probe = prof["height_bound"] + 1
    columns = set(range(probe + 2)) | ({prof["full_column"]} if prof["full_column"] is not None else set())
    for c in columns:
        unbounded = bf_contains(chosen, (m, c, probe)) and bf_contains(chosen, (m, c, probe + 7))
        if unbounded and not bf_contains(chosen, (m, c, INF)):
            return False
        if unbounded != (c == prof["full_column"]):
            return False
    return True


def _claim3_bf(args: dict, bound: int) -> CertificateReport:
    rep = CertificateReport("claim3_bf")
    rng = random.Random(args.get("seed", 0))
    bands = list(args.get("bands", range(bound + 1)))
    cols = args.get("columns")
    if cols is None:
        cols = {n: rng.randint(0, bound) for n in bands}
    cols = {int(k): int(v) for k, v in dict(cols).items()}
    if set(cols) != set(bands) or any(not is_nat(v) or v > bound for v in cols.values()):
        raise MalformedArgs("columns must give one column <= bound per band")
    trials = int(args.get("trials", 20))
    trunc = L.truncate(bound)
    pts = trunc.labels
    down_ok = sym_ok = case_ok = True
    for t in range(trials):
        if t == 0 and "F" in args:
            removed = set(args["F"])
        else:
            removed = {n for n in bands if rng.random() < 0.3}
        chosen = {n: cols[n] for n in bands if n not in removed}
        mask = mask_of(k for k, p in enumerate(pts) if bf_contains(chosen, p))
        down_ok &= trunc.closure(mask) == mask
        for m in range(bound + 1):
            sym_ok &= bf_column_sup_closed(chosen, m)
            prof = bf_band_profile(chosen, m)
            described = mask_of(
                k for k, p in enumerate(pts) if p[0] == m and (
                    (p[1] == prof["full_column"])
                    or (p[2] != INF and m in chosen and max(p[1], p[2]) <= chosen[m])
                    or (p[2] != INF and m + 1 in chosen and p[2] <= chosen[m + 1])))
            down_ok &= described == mask & band_mask(pts, [m])
    # the two cases of the finiteness argument: removing n and n+1 empties band n
    for n in bands:
        rest = {k: cols[k] for k in bands if k not in (n, n + 1)}
        case_ok &= not any(bf_contains(rest, p) for p in L.band_points(n, bound))
        if n + 1 not in cols:
            rest = {k: cols[k] for k in bands if k != n}
            case_ok &= not any(bf_contains(rest, p) for p in L.band_points(n, bound))
    rep.add("down_closed", "bounded", down_ok, f"{trials} sampled removals; band profiles match the truncation", bound)
    rep.add("column_sup_closed", "rule", sym_ok, "only the chosen column of a band has unbounded heights, and it holds its top")
    rep.add("removal_cases", "bounded", case_ok, "dropping bands n and n+1 (or n when n+1 is absent) misses band n", bound)
    return rep


def directed_refuter(points: Sequence) -> tuple:
    """A pair from ``points`` with no common upper bound, when bands are two or more apart."""
    pts = [L.check_point(tuple(p)) for p in points]
    if not pts:
        raise MalformedArgs("empty set")
    p = min(pts, key=lambda x: x[0])
    q = max(pts, key=lambda x: x[0])
    if q[0] < p[0] + 2:
        raise MalformedArgs("points do not span bands two or more apart")
    return p, q


def common_upper_bounds(p, q, bound: int) -> list:
    return [r for r in L.points(bound) if L._leq(p, r) and L._leq(q, r)]


def _directed_refuter(args: dict, bound: int) -> CertificateReport:
    rep = CertificateReport("directed_refuter")
    samples = args.get("D")
    rng = random.Random(args.get("seed", 0))
    if samples is None:
        if bound < 2:
            raise MalformedArgs("directed_refuter needs bound >= 2")
        samples = []
        for _ in range(int(args.get("samples", 200))):
            n = rng.randint(0, bound - 2)
            m = rng.randint(n + 2, bound)
            extra = rng.randint(0, 3)
            cand = [(b, rng.randint(0, bound), rng.choice(heights(bound)))
                    for b in [n, m] + [rng.randint(n, m) for _ in range(extra)]]
            samples.append(cand)
    else:
        samples = [samples]
    ok = True
    shown = []
    for cand in samples:
        p, q = directed_refuter(cand)
        cap = max([bound] + [v for r in (p, q) for v in r if v != INF])
        empty = not common_upper_bounds(p, q, cap)
        ok &= empty and q[0] >= p[0] + 2
        if len(shown) < 3:
            shown.append([format_point(p), format_point(q)])
    rep.add("bands_apart", "rule", set(CLAUSE_BAND_SHIFT.values()) <= {0, 1},
            "up-sets of the pair lie in disjoint band pairs")
    rep.add("no_upper_bound_enumerated", "bounded", ok, f"{len(samples)} candidate set(s)", bound)
    rep.data["pairs"] = shown
    return rep


def _claim4(args: dict, bound: int) -> CertificateReport:
    """Composite: bounded-band compact sets sit in a proper prefix, which is closed."""
    rep = CertificateReport("claim4")
    c3 = _claim3_bf(args, bound)
    rep.add("claim3_bf", "bounded", c3.passed, c3.result, bound)
    m0 = int(args.get("m0", min(2, bound)))
    c1 = _claim1_prefix({"n": m0}, bound)
    rep.add("prefix_closed", "rule", c1.passed, f"B_{m0} is the closure fixpoint ({c1.result})")
    rep.add("prefix_proper", "symbolic", not any(p[0] <= m0 for p in [(m0 + 1, 0, 0)]),
            f"({m0 + 1},0,0) lies outside B_{m0}")
    return rep


CERTIFICATES = {
    "band_upset": _band_upset,
    "band_disjoint": _band_disjoint,
    "claim1_prefix": _claim1_prefix,
    "claim3_bf": _claim3_bf,
    "directed_refuter": _directed_refuter,
    "claim4": _claim4,
}


def L_certificates(name: str, args: dict | None = None, bound: int = 8) -> CertificateReport:
    if name not in CERTIFICATES:
        raise UnknownCertificate(name)
    if not isinstance(bound, int) or bound < 0:
        raise MalformedArgs("bound must be a nonnegative integer")
    if args is not None and not isinstance(args, dict):
        raise MalformedArgs("args must be a mapping")
    return CERTIFICATES[name](dict(args or {}), bound)
