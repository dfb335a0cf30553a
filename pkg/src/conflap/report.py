"""Verification reports and their JSON / text serializations."""

import json
import re
from dataclasses import dataclass, field

from . import __version__
from .errors import LimitExceeded

TOOL = "conflap"
STATUSES = ("pass", "fail", "skipped", "limit")


def _natural_key(case_id):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", case_id)]


@dataclass
class Case:
    id: str
    description: str
    status: str
    witness: str | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown case status {self.status!r}")

    def to_dict(self):
        d = {"id": self.id, "description": self.description, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        return d


@dataclass
class Report:
    command: str
    params: dict = field(default_factory=dict)
    cases: list = field(default_factory=list)
    seed: int | None = None
    data: dict = field(default_factory=dict)

    @property
    def status(self):
        statuses = {c.status for c in self.cases}
        if "fail" in statuses:
            return "fail"
        if "limit" in statuses:
            return "limit"
        return "pass"

    @property
    def passed(self):
        return self.status == "pass"

    def add(self, case_id, description, ok, witness=None):
        status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        self.cases.append(Case(case_id, description, status, witness))

    def check(self, case_id, description, thunk):
        """Run ``thunk`` as one case.

        ``thunk`` returns a bool or ``(bool, witness)``; exceeding the term
        cap is recorded as status ``limit`` instead of propagating.
        """
        try:
            result = thunk()
        except LimitExceeded as exc:
            self.add(case_id, description, "limit", str(exc))
            return False
        ok, witness = result if isinstance(result, tuple) else (result, None)
        self.add(case_id, description, bool(ok), None if ok else witness)
        return bool(ok)

    def merge(self, other):
        self.cases.extend(other.cases)
        for key, value in other.data.items():
            self.data[key] = value
        return self

    def counts(self):
        out = {s: 0 for s in STATUSES}
        for c in self.cases:
            out[c.status] += 1
        return out

    def sorted_cases(self):
        return sorted(self.cases, key=lambda c: _natural_key(c.id))

    def to_dict(self):
        d = {
            "tool": TOOL,
            "version": __version__,
            "command": self.command,
            "params": self.params,
            "cases": [c.to_dict() for c in self.sorted_cases()],
            "status": self.status,
            "seed": self.seed,
        }
        if self.data:
            d["data"] = self.data
        return d

    @classmethod
    def from_dict(cls, d):
        cases = [Case(c["id"], c["description"], c["status"], c.get("witness")) for c in d["cases"]]
        report = cls(d["command"], dict(d["params"]), cases, d.get("seed"), dict(d.get("data", {})))
        if report.status != d["status"]:
            raise ValueError(f"status {d['status']!r} disagrees with the case list")
        return report

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_text(self):
        lines = []
        for c in self.sorted_cases():
            line = f"{c.status.upper():7} {c.id}  {c.description}"
            if c.witness:
                line += f"\n        witness: {c.witness}"
            lines.append(line)
        counts = self.counts()
        summary = ", ".join(f"{v} {k}" for k, v in counts.items() if v)
        lines.append(f"{self.command}: {self.status.upper()} ({summary or 'no cases'})")
        return "\n".join(lines)

    def __eq__(self, other):
        if not isinstance(other, Report):
            return NotImplemented
        return self.to_dict() == other.to_dict()
