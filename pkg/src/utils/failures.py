"""
Structured error handling and failure tracking for quiverhn.

Every exception carries the exit status the CLI reports for it.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from utils.constants import (
    EXIT_MALFORMED,
    EXIT_RESOURCE,
    EXIT_CONTRADICTION,
    EXIT_NOT_APPLICABLE,
)
from utils.logger import Logger


class QuiverError(Exception):
    """Base class for all quiverhn exceptions."""
    exit_status = EXIT_MALFORMED

    def __init__(self, message: str, critical: bool = False):
        super().__init__(message)
        self.message = message
        self.critical = critical


class MalformedInputError(QuiverError):
    """Shapes, fields, vertices or weights that violate a structural invariant."""
    exit_status = EXIT_MALFORMED


class UndefinedSlopeError(MalformedInputError):
    """Slope requested for the zero dimension vector."""
    pass


class ResourceLimitError(QuiverError):
    """An enumeration would exceed its configured guard."""
    exit_status = EXIT_RESOURCE

    def __init__(self, what: str, count: int, guard: int):
        super().__init__(f"{what}: {count} exceeds guard {guard}")
        self.what = what
        self.count = count
        self.guard = guard


class InternalContradictionError(QuiverError):
    """A uniqueness assertion or certificate failed."""
    exit_status = EXIT_CONTRADICTION

    def __init__(self, message: str, payload: Optional[Dict[str, Any]] = None):
        super().__init__(message, critical=True)
        self.payload = payload or {}


class NotApplicableError(QuiverError):
    """The operation needs an unstable representation."""
    exit_status = EXIT_NOT_APPLICABLE


@dataclass
class FailureRecord:
    kind: str
    message: str
    payload: Dict[str, Any] = field(default_factory=dict)


class FailureLedger:
    """Collects consistency failures found during a scan, grouped by kind."""

    def __init__(self, max_payloads: int = 10):
        """
        Args:
            max_payloads: Counterexample payloads kept per kind; counts are always exact.
        """
        self.logger = Logger("FailureLedger")
        self.max_payloads = max_payloads
        self.counts: Dict[str, int] = {}
        self.records: List[FailureRecord] = []

    def record(self, kind: str, message: str, payload: Optional[Dict[str, Any]] = None):
        """
        Record a failure incident.

        Args:
            kind: Failure kind (see utils.constants FAILURE_*).
            message: Human readable description.
            payload: Serialized counterexample for offline inspection.
        """
        self.counts[kind] = self.counts.get(kind, 0) + 1
        if self.counts[kind] <= self.max_payloads:
            self.records.append(FailureRecord(kind, message, payload or {}))
        self.logger.error(f"Failure detected: {kind} - {message}")

    def merge(self, other: "FailureLedger"):
        """Fold another ledger into this one, preserving record order."""
        for kind, count in other.counts.items():
            self.counts[kind] = self.counts.get(kind, 0) + count
        for rec in other.records:
            kept = sum(1 for r in self.records if r.kind == rec.kind)
            if kept < self.max_payloads:
                self.records.append(rec)

    def count(self, kind: str) -> int:
        return self.counts.get(kind, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> Dict[str, Any]:
        return {
            "counts": {k: self.counts[k] for k in sorted(self.counts)},
            "counterexamples": [
                {"kind": r.kind, "message": r.message, "payload": r.payload}
                for r in self.records
            ],
        }
