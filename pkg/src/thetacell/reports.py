"""Machine-readable outcomes of bounded lemma checks."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Optional


PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class VerificationReport:
    check_id: str
    statement: str
    window: dict
    status: str
    witness: Optional[object] = None
    reason: Optional[str] = None
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status == FAIL and self.witness is None:
            raise ValueError("a failing report must carry a witness")
        if self.status == INCONCLUSIVE and not self.reason:
            raise ValueError("an inconclusive report must carry a reason")

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "statement": self.statement,
            "window": self.window,
            "status": self.status,
            "witness": self.witness,
            "reason": self.reason,
            "seconds": round(self.seconds, 3),
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def line(self) -> str:
        extra = ""
        if self.status == FAIL:
            extra = f"  witness={self.witness!r}"
        elif self.status == INCONCLUSIVE:
            extra = f"  reason={self.reason}"
        return f"[{self.status.upper():>12}] {self.check_id}  ({self.seconds:.1f}s){extra}"


@contextmanager
def timed_report(check_id: str, statement: str, window: dict):
    """Collects a report; the body sets outcome fields on the holder."""
    holder = {"status": PASS, "witness": None, "reason": None, "details": {}}
    start = time.perf_counter()
    yield holder
    elapsed = time.perf_counter() - start
    holder["report"] = VerificationReport(
        check_id=check_id,
        statement=statement,
        window=window,
        status=holder["status"],
        witness=holder["witness"],
        reason=holder["reason"],
        seconds=elapsed,
        details=holder["details"],
    )
