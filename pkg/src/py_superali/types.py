"""Type definitions for py-superali report payloads."""

from typing import Any, Literal, NotRequired, TypedDict


ClassificationName = Literal["zero", "commutator", "higher-order", "nonvanishing"]
ClosureFlag = Literal["lands-in-spec", "leaves-spec"]
OutputFormat = Literal["json", "text"]
BenchMethod = Literal["naive", "generic"]
CommutatorMethod = Literal["auto", "naive", "generic"]


class ScanItemDict(TypedDict):
    """One k (matrix scans) or N (vectorial scans) of a scan."""

    index: int
    classification: ClassificationName
    order: NotRequired[int]
    closure: NotRequired[ClosureFlag]
    note: NotRequired[str]


class ScanReportDict(TypedDict):
    """Serialized ScanReport, keys in output order."""

    command: str
    spec: str
    version: str
    parameters: dict[str, Any]
    summary: dict[str, Any]
    results: list[ScanItemDict]
    timing: dict[str, float]


class CheckDict(TypedDict):
    """Outcome of a single acceptance check."""

    name: str
    passed: bool
    detail: str


class VerificationReportDict(TypedDict):
    """Serialized VerificationReport, keys in output order."""

    command: str
    suite: str
    version: str
    passed: bool
    checks: list[CheckDict]
    timing: dict[str, float]


class BenchReportDict(TypedDict):
    """Serialized BenchReport, keys in output order."""

    command: str
    spec: str
    version: str
    method: BenchMethod
    r: int
    tuples: int
    multiplications: int
    terms: int
    vanishes: bool
    elapsed_ms: float
