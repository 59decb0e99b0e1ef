"""JSON certification reports.

The canonical body of a report is byte-identical across runs with the same
arguments: enumeration orders are fixed, seeds are explicit, and timing
lives in a separate non-canonical field that is stripped before hashing or
comparing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from . import __version__
from .bwspread import CheckOutcome

SCHEMA_VERSION = "1"
TOOL_NAME = "bwcayley"
TOOL_VERSION = __version__


def jsonable(value: Any) -> Any:
    """Exact values to JSON-safe ones; integral fractions become ints."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    return str(value)


@dataclass
class Check:
    """One named certification check inside a report."""

    name: str
    paper_anchor: str
    status: str  # pass | fail | skipped
    expected: Optional[str] = None
    witness: Any = None
    counts: Dict[str, int] = dc_field(default_factory=dict)
    note: str = ""
    millis: float = 0.0

    def canonical(self) -> Dict[str, Any]:
        body = {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "status": self.status,
            "witness": jsonable(self.witness),
            "counts": jsonable(self.counts),
        }
        if self.expected is not None:
            body["expected"] = self.expected
        if self.note:
            body["note"] = self.note
        return body


def check_from_outcome(
    name: str,
    anchor: str,
    outcome: CheckOutcome,
    expected: Optional[str] = None,
    millis: float = 0.0,
) -> Check:
    status = "skipped" if outcome.passed is None else ("pass" if outcome.passed else "fail")
    return Check(
        name=name,
        paper_anchor=anchor,
        status=status,
        expected=expected,
        witness=outcome.witness,
        counts=dict(outcome.counts),
        note=outcome.note,
        millis=millis,
    )


@dataclass
class Report:
    """Top-level certification report for one CLI command."""

    command: str
    field_spec: str
    regime: Optional[str] = None
    seed: Optional[int] = None
    checks: List[Check] = dc_field(default_factory=list)

    def canonical_dict(self) -> Dict[str, Any]:
        body: Dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
            "command": self.command,
            "field": self.field_spec,
            "checks": [c.canonical() for c in self.checks],
        }
        if self.regime is not None:
            body["regime"] = self.regime
        if self.seed is not None:
            body["seed"] = self.seed
        return body

    def full_dict(self) -> Dict[str, Any]:
        body = self.canonical_dict()
        body["timing_ms"] = {
            "total": round(sum(c.millis for c in self.checks), 3),
            "per_check": {c.name: round(c.millis, 3) for c in self.checks},
        }
        return body

    def canonical_json(self) -> str:
        return json.dumps(self.canonical_dict(), sort_keys=True, indent=2)

    def full_json(self) -> str:
        return json.dumps(self.full_dict(), sort_keys=True, indent=2)

    def mismatches(self) -> List[str]:
        """Names of checks whose status differs from the regime's prediction."""
        return [c.name for c in self.checks if c.expected is not None and c.status != c.expected]
