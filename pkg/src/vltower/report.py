"""Structured verification reports: one JSON shape, one text projection.

Every claim in a report carries a provenance label: "verified" for facts the
run checked exhaustively or exactly, "derived" for values computed from
verified pieces, "paper-assumed" for external inputs that are recorded but
never checked here.  Reports are deterministic given their inputs and seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "vltower.report/1"

PROVENANCES = ("verified", "derived", "paper-assumed")


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    provenance: str
    passed: bool
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unlabeled or mislabeled claim: {self.provenance!r}")


@dataclass
class Report:
    command: str
    inputs: dict
    seed: int | None = None
    claims: list[Claim] = field(default_factory=list)

    def add(
        self,
        claim_id: str,
        statement: str,
        provenance: str,
        passed: bool,
        **data,
    ) -> None:
        self.claims.append(Claim(claim_id, statement, provenance, passed, data))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "seed": self.seed,
            "pass": self.passed,
            "claims": [
                {
                    "id": c.id,
                    "statement": c.statement,
                    "provenance": c.provenance,
                    "pass": c.passed,
                    "data": c.data,
                }
                for c in self.claims
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ": "), indent=1)

    def to_text(self) -> str:
        d = self.to_dict()
        lines = [f"[{d['command']}] pass={d['pass']}"]
        for key, val in sorted(d["inputs"].items()):
            lines.append(f"  input {key} = {val}")
        if d["seed"] is not None:
            lines.append(f"  seed = {d['seed']}")
        for c in d["claims"]:
            mark = "ok " if c["pass"] else "FAIL"
            lines.append(f"  {mark} [{c['provenance']:>13}] {c['id']}: {c['statement']}")
            for key, val in sorted(c["data"].items()):
                lines.append(f"        {key} = {val}")
        return "\n".join(lines)
