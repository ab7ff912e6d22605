"""Check reports shared by every axiom checker."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    BOUNDED_PASS = "bounded-pass"
    NOT_APPLICABLE = "not-applicable"


@dataclass
class Check:
    name: str
    status: Status
    witness: Any = None
    bound: Any = None
    note: str | None = None

    def __post_init__(self):
        if self.status is Status.FAIL and self.witness is None:
            raise ValueError(f"failing check {self.name!r} needs a witness")
        if self.status is Status.BOUNDED_PASS and self.bound is None:
            raise ValueError(f"bounded check {self.name!r} needs its bound")

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAIL

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"name": self.name, "status": self.status.value}
        if self.witness is not None:
            d["witness"] = _jsonable(self.witness)
        if self.bound is not None:
            d["bound"] = _jsonable(self.bound)
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class CheckReport:
    subject: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, name, status, witness=None, bound=None, note=None) -> Check:
        check = Check(name, Status(status), witness, bound, note)
        self.checks.append(check)
        return check

    def passed(self, name, *, bound=None, note=None) -> Check:
        if bound is None:
            return self.add(name, Status.PASS, note=note)
        return self.add(name, Status.BOUNDED_PASS, bound=bound, note=note)

    def failed(self, name, witness, note=None) -> Check:
        return self.add(name, Status.FAIL, witness=witness, note=note)

    def verdict(self, name, witness, *, bound=None, note=None) -> Check:
        """Record a fail if `witness` is not None, else a (bounded) pass."""
        if witness is not None:
            return self.failed(name, witness, note=note)
        return self.passed(name, bound=bound, note=note)

    def extend(self, other: CheckReport, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.witness, c.bound, c.note))
        self.notes.extend(other.notes)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def status(self, name: str) -> Status:
        return self[name].status

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, **kw)

    def summary(self) -> str:
        lines = [f"{self.subject}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            line = f"  [{c.status.value}] {c.name}"
            if c.witness is not None:
                line += f"  witness={_jsonable(c.witness)}"
            if c.bound is not None:
                line += f"  bound={_jsonable(c.bound)}"
            lines.append(line)
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def _jsonable(value: Any) -> Any:
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        items = [_jsonable(v) for v in value]
        try:
            return sorted(items)
        except TypeError:
            return sorted(items, key=repr)
    return str(value)


def merge(subject: str, reports: Iterable[CheckReport]) -> CheckReport:
    out = CheckReport(subject)
    for r in reports:
        out.extend(r, prefix=f"{r.subject}/")
    return out


# JSON schema used by the CLI to validate its own output.
CHECK_REPORT_SCHEMA = {
    "type": "object",
    "required": ["subject", "ok", "checks", "notes"],
    "properties": {
        "subject": {"type": "string"},
        "ok": {"type": "boolean"},
        "notes": {"type": "array", "items": {"type": "string"}},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status"],
                "properties": {
                    "name": {"type": "string"},
                    "status": {"enum": [s.value for s in Status]},
                    "note": {"type": "string"},
                },
                "allOf": [
                    {"if": {"properties": {"status": {"const": "fail"}}},
                     "then": {"required": ["witness"]}},
                    {"if": {"properties": {"status": {"const": "bounded-pass"}}},
                     "then": {"required": ["bound"]}},
                ],
            },
        },
    },
}
