from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Validator outcome: "pass", "fail" or "inconclusive" plus the failed checks."""

    kind: str
    failures: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.failures:
            return "fail"
        if self.inconclusive:
            return "inconclusive"
        return "pass"

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def fail(self, check: str, **where):
        self.failures.append({"check": check, **where})

    def to_json(self):
        return {"kind": self.kind, "verdict": self.verdict, "failures": self.failures,
                "inconclusive": self.inconclusive}
