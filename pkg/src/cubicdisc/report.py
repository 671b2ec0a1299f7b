"""Verification reports shared by the checking routines and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class VerificationReport:
    """Outcome of a single check.

    ``status`` is PASS, FAIL, or INCONCLUSIVE (the last means the check could
    not decide at the requested tolerance, e.g. truncation tails too large;
    gating logic treats it as not-PASS).
    """

    check_name: str
    status: str
    details: list[str] = field(default_factory=list)
    residuals: list[float] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def as_dict(self) -> dict:
        return {
            "check_name": self.check_name,
            "status": self.status,
            "details": list(self.details),
            "residuals": [float(r) for r in self.residuals],
        }

    def summary_line(self) -> str:
        return f"[{self.status}] {self.check_name}"
