"""Structured outcomes of identity checks."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field

WITNESS_LIMIT = 500

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class VerificationReport:
    identity_id: str
    params: dict
    status: str
    checked: int = 0
    witness: str | None = None
    elapsed_ms: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.status == PASS

    def to_json(self):
        out = {"identity_id": self.identity_id, "params": self.params, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        out["checked"] = self.checked
        out["elapsed_ms"] = self.elapsed_ms
        if self.details:
            out["details"] = self.details
        return out

    @classmethod
    def from_json(cls, obj):
        return cls(
            identity_id=obj["identity_id"],
            params=obj["params"],
            status=obj["status"],
            checked=obj.get("checked", 0),
            witness=obj.get("witness"),
            elapsed_ms=obj.get("elapsed_ms", 0),
            details=obj.get("details", {}),
        )

    def as_dict(self):
        return asdict(self)


class Recorder:
    """Collects failures while a check runs and builds the final report."""

    def __init__(self, identity_id, **params):
        self.identity_id = identity_id
        self.params = params
        self.checked = 0
        self.failures = []
        self.details = {}
        self._start = time.perf_counter()

    def ok(self, count=1):
        self.checked += count

    def check(self, condition, witness):
        """Record one comparison; ``witness`` may be a callable producing the text lazily."""
        self.checked += 1
        if not condition:
            self.failures.append(witness() if callable(witness) else str(witness))
        return condition

    def fail(self, witness):
        self.failures.append(str(witness))

    def report(self):
        elapsed = int(round((time.perf_counter() - self._start) * 1000))
        if self.failures:
            witness = self.failures[0]
            if len(witness) > WITNESS_LIMIT:
                witness = witness[:WITNESS_LIMIT] + f"... ({len(witness)} chars)"
            if len(self.failures) > 1:
                witness += f" (+{len(self.failures) - 1} more)"
            return VerificationReport(self.identity_id, self.params, FAIL, self.checked, witness, elapsed, self.details)
        return VerificationReport(self.identity_id, self.params, PASS, self.checked, None, elapsed, self.details)


def skipped(identity_id, reason, **params):
    return VerificationReport(identity_id, params, SKIPPED, 0, reason, 0)


@contextmanager
def timed():
    start = time.perf_counter()
    box = {}
    yield box
    box["ms"] = int(round((time.perf_counter() - start) * 1000))
