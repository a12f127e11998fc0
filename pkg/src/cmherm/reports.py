"""Structured pass/fail reports returned by the verification routines."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    anchor: str = ""
    witness: object = None

    def to_json_obj(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.anchor:
            out["anchor"] = self.anchor
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, witness=None, anchor: str = "") -> bool:
        passed = bool(passed)
        self.checks.append(Check(name, passed, anchor, None if passed else witness))
        return passed

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.anchor, c.witness))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_json_obj(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_json_obj() for c in self.checks],
        }
