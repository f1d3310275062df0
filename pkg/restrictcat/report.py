"""
Check reports.

Every law check in the package returns a CheckReport. A report is "fail"
exactly when it holds at least one violation; serialization sorts keys and
violations so that identical inputs give byte-identical output.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple


class Status(str, Enum):
    """Outcome of a check."""
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"
    INPUT_ERROR = "input-error"


@dataclass(frozen=True)
class Violation:
    """A single failed law instance.

    Attributes:
        law: Tag of the violated law (e.g. "R3", "associativity")
        witness: Names bound to the ids that exhibit the failure
    """
    law: str
    witness: Tuple[Tuple[str, str], ...]

    @classmethod
    def of(cls, law: str, **witness: Any) -> Violation:
        return cls(law, tuple(sorted((k, str(v)) for k, v in witness.items())))

    def to_dict(self) -> Dict[str, Any]:
        return {"law": self.law, "witness": dict(self.witness)}

    def sort_key(self) -> Tuple[str, Tuple[Tuple[str, str], ...]]:
        return (self.law, self.witness)

    def mentions(self, ident: str) -> bool:
        """True if any witness value contains ``ident``."""
        return any(ident in value for _, value in self.witness)


@dataclass
class CheckReport:
    """Collected result of one check.

    Attributes:
        check: Name of the check
        violations: Failed law instances
        notes: Free-form remarks such as "not-applicable" entries
        metadata: Extra data such as truncation bounds or chosen witnesses
        applicable: False when nothing could be checked at all
        error: Message for input-error reports
    """
    check: str
    violations: List[Violation] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)
    applicable: bool = True
    error: Optional[str] = None

    @classmethod
    def input_error(cls, check: str, message: str) -> CheckReport:
        return cls(check=check, error=message)

    @property
    def status(self) -> Status:
        if self.error is not None:
            return Status.INPUT_ERROR
        if self.violations:
            return Status.FAIL
        if not self.applicable:
            return Status.NOT_APPLICABLE
        return Status.PASS

    @property
    def passed(self) -> bool:
        """True for pass and not-applicable."""
        return self.status in (Status.PASS, Status.NOT_APPLICABLE)

    def violate(self, law: str, **witness: Any) -> None:
        self.violations.append(Violation.of(law, **witness))

    def note(self, text: str) -> None:
        if text not in self.notes:
            self.notes.append(text)

    def laws(self) -> List[str]:
        return sorted({v.law for v in self.violations})

    def merge(self, other: CheckReport, prefix: Optional[str] = None) -> CheckReport:
        """Fold another report into this one, optionally prefixing its law tags."""
        for violation in other.violations:
            law = f"{prefix}:{violation.law}" if prefix else violation.law
            self.violations.append(Violation(law, violation.witness))
        for text in other.notes:
            self.note(f"{prefix}: {text}" if prefix else text)
        if other.error is not None and self.error is None:
            self.error = other.error
        return self

    def to_dict(self) -> Dict[str, Any]:
        violations = sorted(set(self.violations), key=Violation.sort_key)
        data: Dict[str, Any] = {
            "check": self.check,
            "status": self.status.value,
            "violations": [v.to_dict() for v in violations],
            "notes": sorted(self.notes),
            "metadata": self.metadata,
        }
        if self.error is not None:
            data["error"] = self.error
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        data = self.to_dict()
        lines = [f"{data['check']}: {data['status']}"]
        if self.error is not None:
            lines.append(f"  error: {self.error}")
        for key in sorted(self.metadata):
            lines.append(f"  {key}: {json.dumps(self.metadata[key], sort_keys=True)}")
        for violation in data["violations"]:
            bindings = ", ".join(f"{k}={v}" for k, v in sorted(violation["witness"].items()))
            lines.append(f"  [{violation['law']}] {bindings}")
        for text in data["notes"]:
            lines.append(f"  note: {text}")
        return "\n".join(lines)

    def digest(self) -> str:
        """SHA-256 of the JSON rendering."""
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()


def combine(check: str, reports: Iterable[CheckReport]) -> CheckReport:
    """Merge several reports under one name, tagging laws with the sub-check names."""
    combined = CheckReport(check=check)
    applicable = False
    for report in reports:
        combined.merge(report, prefix=report.check)
        combined.metadata[report.check] = report.status.value
        applicable = applicable or report.applicable
    combined.applicable = applicable
    return combined
