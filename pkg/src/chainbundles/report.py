"""Verification reports: ordered findings with concrete witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
NOTE = "note"


@dataclass(frozen=True)
class Finding:
    location: str
    check: str
    verdict: str
    witness: str = ""

    def as_dict(self) -> dict[str, str]:
        return {
            "location": self.location,
            "check": self.check,
            "verdict": self.verdict,
            "witness": self.witness,
        }


@dataclass
class Report:
    """An ordered list of findings.

    ``status`` is ``"fail"`` as soon as one finding fails; notes never change
    the status. ``derived`` holds constructed artifacts in document syntax.
    """

    findings: list[Finding] = field(default_factory=list)
    derived: dict[str, Any] = field(default_factory=dict)

    def add(self, location: str, check: str, ok: bool, witness: str = "") -> bool:
        self.findings.append(Finding(location, check, PASS if ok else FAIL, witness))
        return ok

    def note(self, location: str, check: str, witness: str = "") -> None:
        self.findings.append(Finding(location, check, NOTE, witness))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for f in other.findings:
            loc = f"{prefix}{f.location}" if prefix else f.location
            self.findings.append(Finding(loc, f.check, f.verdict, f.witness))

    @property
    def ok(self) -> bool:
        return all(f.verdict != FAIL for f in self.findings)

    @property
    def status(self) -> str:
        return PASS if self.ok else FAIL

    def failures(self) -> list[Finding]:
        return [f for f in self.findings if f.verdict == FAIL]

    def __bool__(self) -> bool:
        return self.ok
