"""Structured pass/fail records for verification runs."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Check:
    id: str
    anchor: str
    passed: bool
    slack: float | None = None
    bound: float | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "pass": bool(self.passed),
                "slack": self.slack, "bound": self.bound, "detail": self.detail}


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, *args, **kwargs) -> Check:
        c = Check(*args, **kwargs)
        self.checks.append(c)
        return c

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "pass": self.passed, "n_checks": len(self.checks),
                "n_failed": sum(not c.passed for c in self.checks),
                "checks": [c.to_dict() for c in self.checks]}
