"""Structured verification reports.

A :class:`Report` is a tree: a list of named :class:`Check` verdicts plus
nested sub-reports.  Reports serialise to plain JSON and back without loss.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterator


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict[str, Any] | None = None
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Check":
        return cls(data["name"], bool(data["passed"]), data.get("witness"), data.get("detail"))


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    sections: list["Report"] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    elapsed: float | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks) and all(s.ok for s in self.sections)

    def __bool__(self) -> bool:
        return self.ok

    def add(self, name: str, passed: bool, witness: dict[str, Any] | None = None,
            detail: str | None = None) -> Check:
        check = Check(name, bool(passed), witness, detail)
        self.checks.append(check)
        return check

    def add_section(self, report: "Report") -> "Report":
        self.sections.append(report)
        return report

    def __getitem__(self, name: str) -> Check | "Report":
        for check in self.checks:
            if check.name == name:
                return check
        for section in self.sections:
            if section.title == name:
                return section
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        try:
            self[name]
        except KeyError:
            return False
        return True

    def walk(self, prefix: str = "") -> Iterator[tuple[str, Check]]:
        """Yield ``(path, check)`` pairs depth first, in insertion order."""
        here = f"{prefix}{self.title}"
        for check in self.checks:
            yield f"{here}/{check.name}", check
        for section in self.sections:
            yield from section.walk(here + "/")

    def failures(self) -> list[tuple[str, Check]]:
        return [(path, c) for path, c in self.walk() if not c.passed]

    def first_failure(self) -> tuple[str, Check] | None:
        for path, check in self.walk():
            if not check.passed:
                return path, check
        return None

    def to_dict(self, timings: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "title": self.title,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
            "sections": [s.to_dict(timings) for s in self.sections],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if timings and self.elapsed is not None:
            out["elapsed"] = self.elapsed
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Report":
        return cls(
            title=data["title"],
            checks=[Check.from_dict(c) for c in data.get("checks", [])],
            sections=[cls.from_dict(s) for s in data.get("sections", [])],
            notes=list(data.get("notes", [])),
            elapsed=data.get("elapsed"),
        )

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True)

    def summary_lines(self) -> list[str]:
        lines = []
        for path, check in self.walk():
            mark = "PASS" if check.passed else "FAIL"
            line = f"{mark} {path}"
            if not check.passed and check.witness is not None:
                line += f"  witness={json.dumps(check.witness, sort_keys=True)}"
            lines.append(line)
        return lines
