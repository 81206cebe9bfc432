"""Check records and deterministic JSON reports."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from ..finspace import FinitePoset

SCHEMA = 1


def jsonable(obj):
    """Convert witnesses and report data to plain JSON values, deterministically."""
    if isinstance(obj, FinitePoset):
        return {"elements": obj.size, "covers": [list(c) for c in sorted(obj.covers())]}
    if hasattr(obj, "poset") and isinstance(obj.poset, FinitePoset):
        return jsonable(obj.poset)
    if hasattr(obj, "base") and hasattr(obj, "fibers"):
        return {"base": jsonable(obj.base), "fibers": [jsonable(f) for f in obj.fibers]}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if isinstance(obj, (set, frozenset)):
        return [jsonable(v) for v in sorted(obj, key=repr)]
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if hasattr(obj, "to_json"):
        return jsonable(obj.to_json())
    return obj


@dataclass
class Record:
    id: str
    statement: str
    result: str  # pass, fail or bounded-pass
    trial: int = 0
    witness: object = None
    bound: int | None = None
    duration: float | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = {"id": self.id, "statement": self.statement, "result": self.result, "trial": self.trial}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.bound is not None:
            out["bound"] = self.bound
        if timings and self.duration is not None:
            out["duration"] = round(self.duration, 3)
        return out


@dataclass
class Report:
    command: list
    seed: int | None = None
    records: list[Record] = field(default_factory=list)

    def add(self, record: Record) -> Record:
        self.records.append(record)
        return record

    def extend(self, other: Report) -> None:
        self.records.extend(other.records)

    @property
    def failed(self) -> list[Record]:
        return [r for r in self.records if r.result == "fail"]

    @property
    def exit_status(self) -> int:
        return 1 if self.failed else 0

    def sorted_records(self) -> list[Record]:
        return sorted(self.records, key=lambda r: (r.id, r.trial))

    def summary(self) -> dict:
        counts: dict[str, int] = {}
        for r in self.records:
            counts[r.result] = counts.get(r.result, 0) + 1
        return counts

    def to_json(self, timings: bool = False) -> str:
        doc = {
            "schema": SCHEMA,
            "command": list(self.command),
            "seed": self.seed,
            "summary": self.summary(),
            "records": [r.to_json(timings) for r in self.sorted_records()],
        }
        return json.dumps(doc, sort_keys=True, indent=2)

    def to_text(self, verbose: bool = False) -> str:
        """Human-readable report; passing trials are folded into one line per check unless ``verbose``."""
        lines = []
        groups: dict[str, list[Record]] = {}
        for r in self.sorted_records():
            groups.setdefault(r.id, []).append(r)
        for cid, recs in groups.items():
            fails = [r for r in recs if r.result == "fail"]
            status = "fail" if fails else recs[0].result if len({r.result for r in recs}) == 1 else "pass"
            bound = next((r.bound for r in recs if r.bound is not None), None)
            extra = f" (bound {bound})" if bound is not None else ""
            lines.append(f"{status:>12}  {cid}  [{len(recs)} trial(s)]{extra}  {recs[0].statement}")
            for r in fails if not verbose else recs:
                if r.witness is not None:
                    tag = "witness" if r.result == "fail" else "data"
                    lines.append(f"{'':>14}trial {r.trial}: {tag} {json.dumps(jsonable(r.witness), sort_keys=True)}")
        counts = self.summary()
        lines.append("summary: " + ", ".join(f"{k}={counts[k]}" for k in sorted(counts)))
        return "\n".join(lines)
