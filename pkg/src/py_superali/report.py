"""Machine-readable scan, verification and benchmark reports.

JSON keys keep a fixed order, rationals are written as "p/q" strings, and the
digest of a report ignores its timing block, so equal inputs hash equally.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .superscalar import format_rational
from .types import (
    BenchMethod,
    BenchReportDict,
    CheckDict,
    ScanItemDict,
    ScanReportDict,
    VerificationReportDict,
)

logger = logging.getLogger(__name__)


def current_version() -> str:
    from . import __version__

    return __version__


def jsonable(value: Any) -> Any:
    """Recursively convert Fractions to 'p/q' strings and tuples/sets to lists."""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, (set, frozenset)):
        return [jsonable(item) for item in sorted(value)]
    return value


def _dump(payload: Any) -> str:
    return json.dumps(jsonable(payload), indent=2, ensure_ascii=False)


@dataclass(frozen=True)
class ScanItem:
    """One scanned k or N."""

    index: int
    classification: str
    order: int | None = None
    closure: str | None = None
    note: str | None = None

    def to_dict(self) -> ScanItemDict:
        item: dict[str, Any] = {"index": self.index, "classification": self.classification}
        if self.order is not None:
            item["order"] = self.order
        if self.closure is not None:
            item["closure"] = self.closure
        if self.note is not None:
            item["note"] = self.note
        return item  # type: ignore[return-value]


@dataclass
class ScanReport:
    """Result of a span or vectorial critical scan."""

    command: str
    spec: str
    parameters: dict[str, Any]
    items: list[ScanItem]
    summary: dict[str, Any] = field(default_factory=dict)
    timing: dict[str, float] = field(default_factory=dict)
    version: str = field(default_factory=current_version)

    def item(self, index: int) -> ScanItem:
        for item in self.items:
            if item.index == index:
                return item
        raise KeyError(index)

    def classifications(self) -> dict[int, str]:
        return {item.index: item.classification for item in self.items}

    def to_dict(self) -> ScanReportDict:
        return {
            "command": self.command,
            "spec": self.spec,
            "version": self.version,
            "parameters": jsonable(self.parameters),
            "summary": jsonable(self.summary),
            "results": [item.to_dict() for item in self.items],
            "timing": {key: round(ms, 3) for key, ms in self.timing.items()},
        }

    def to_json(self) -> str:
        return _dump(self.to_dict())

    def digest(self) -> str:
        """SHA-256 of the JSON payload without the timing block."""
        payload = dict(self.to_dict())
        payload.pop("timing", None)
        return hashlib.sha256(_dump(payload).encode()).hexdigest()

    def to_text(self) -> str:
        lines = [f"{self.command} {self.spec}"]
        for key, value in self.parameters.items():
            lines.append(f"  {key}: {jsonable(value)}")
        for key, value in self.summary.items():
            lines.append(f"  {key}: {jsonable(value)}")
        for item in self.items:
            extras = []
            if item.order is not None:
                extras.append(f"order {item.order}")
            if item.closure is not None:
                extras.append(item.closure)
            if item.note is not None:
                extras.append(item.note)
            suffix = f" ({', '.join(extras)})" if extras else ""
            lines.append(f"  {item.index}: {item.classification}{suffix}")
        return "\n".join(lines)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one named check in a verification suite."""

    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> CheckDict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    """Result of a verification suite run."""

    suite: str
    checks: list[CheckResult]
    timing: dict[str, float] = field(default_factory=dict)
    version: str = field(default_factory=current_version)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> VerificationReportDict:
        return {
            "command": "verify",
            "suite": self.suite,
            "version": self.version,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
            "timing": {key: round(ms, 3) for key, ms in self.timing.items()},
        }

    def to_json(self) -> str:
        return _dump(self.to_dict())

    def to_text(self) -> str:
        lines = [f"verify {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for check in self.checks:
            mark = "ok  " if check.passed else "FAIL"
            detail = f" - {check.detail}" if check.detail else ""
            lines.append(f"  [{mark}] {check.name}{detail}")
        return "\n".join(lines)


@dataclass
class BenchReport:
    """Timing and work counts of one benchmark run."""

    spec: str
    method: BenchMethod
    r: int
    tuples: int
    multiplications: int
    terms: int
    vanishes: bool
    elapsed_ms: float
    version: str = field(default_factory=current_version)

    def to_dict(self) -> BenchReportDict:
        return {
            "command": "bench",
            "spec": self.spec,
            "version": self.version,
            "method": self.method,
            "r": self.r,
            "tuples": self.tuples,
            "multiplications": self.multiplications,
            "terms": self.terms,
            "vanishes": self.vanishes,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    def to_json(self) -> str:
        return _dump(self.to_dict())

    def to_text(self) -> str:
        return (
            f"bench {self.spec} r={self.r} method={self.method}: "
            f"{self.elapsed_ms:.1f} ms, {self.tuples} tuples, "
            f"{self.multiplications} multiplications, {self.terms} terms, "
            f"{'vanishes' if self.vanishes else 'nonzero'}"
        )
