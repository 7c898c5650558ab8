"""Machine-readable outcome records for verification checks."""

from __future__ import annotations

import time
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of a single verification.

    ``expected`` and ``actual`` are exact values rendered as strings
    (integers or integer polynomials, never floats).  A failing report
    always carries the first point of divergence in ``actual``.
    """

    check_id: str
    params: dict = field(default_factory=dict)
    status: str = "pass"  # pass | fail | skipped
    expected: str = ""
    actual: str = ""
    runtime_ms: int = 0

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "params": dict(self.params),
            "status": self.status,
            "expected": self.expected,
            "actual": self.actual,
            "runtime_ms": self.runtime_ms,
        }

    def __str__(self) -> str:
        ps = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        body = f"{self.check_id} [{ps}] {self.status.upper()}"
        if self.status == "fail":
            body += f" expected={self.expected} actual={self.actual}"
        return body


class timer:
    """Context manager measuring wall time in integer milliseconds."""

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int(round(1000.0 * (time.perf_counter() - self.t0)))
        return False


def report(check_id, params, ok, expected, actual, ms=0) -> CheckReport:
    return CheckReport(
        check_id=check_id,
        params=dict(params),
        status="pass" if ok else "fail",
        expected=str(expected),
        actual=str(actual),
        runtime_ms=ms,
    )
