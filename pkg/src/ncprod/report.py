"""Structured pass/fail reports shared by the verifiers and the CLI."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = "1.0"


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    """Ordered list of checks; passes iff every check passes."""

    checks: list[Check] = field(default_factory=list)

    def add(self, check_id: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(check_id, bool(passed), detail))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.passed, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_ids(self) -> list[str]:
        return [c.id for c in self.checks if not c.passed]

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def __contains__(self, check_id: str) -> bool:
        return any(c.id == check_id for c in self.checks)


@dataclass
class VerificationReport(Report):
    command: str = ""
    digest: str = ""
    values: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def overall(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "input_digest": self.digest,
            "checks": [{"id": c.id, "status": "pass" if c.passed else "fail", "detail": c.detail} for c in self.checks],
            "values": self.values,
            "notes": self.notes,
            "overall": self.overall,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    def to_text(self, verbose: bool = False) -> str:
        lines = [f"{self.command}: {self.overall.upper()}"]
        for c in self.checks:
            status = "ok  " if c.passed else "FAIL"
            line = f"  [{status}] {c.id}"
            if c.detail and (verbose or not c.passed):
                line += f"  {c.detail}"
            lines.append(line)
        for k, v in self.values.items():
            lines.append(f"  {k} = {v}")
        if verbose:
            lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def digest_of(obj: Any) -> str:
    """sha256 of the canonical JSON encoding."""
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()
