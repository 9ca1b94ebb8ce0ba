"""Check outcomes and the plain-data rendering of witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .rings import RingElement

STATUSES = ("pass", "fail", "inapplicable")


def describe(obj) -> Any:
    """Render a value as JSON-compatible data using canonical expression strings."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, RingElement):
        return str(obj)
    if hasattr(obj, "to_strings"):
        return obj.to_strings()
    if hasattr(obj, "describe"):
        return obj.describe()
    if isinstance(obj, dict):
        return {str(k): describe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [describe(v) for v in obj]
    return str(obj)


@dataclass
class CheckResult:
    """Outcome of one identity check.

    ``witness`` is present exactly when ``status == "fail"``; it holds the
    sampled inputs and both evaluated sides as canonical strings.  ``precision``
    is the smallest series precision at which the two sides were compared.
    """

    name: str
    status: str
    trials: int = 0
    witness: dict | None = None
    precision: int | None = None
    info: dict | None = None
    raw_witness: dict | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"status must be one of {STATUSES}")
        if self.status == "fail" and self.witness is None:
            raise ValueError("a failing check needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "trials": self.trials,
            "witness": self.witness,
            "precision": self.precision,
            "info": self.info,
        }


def overall_status(results) -> str:
    statuses = [r.status for r in results]
    if "fail" in statuses:
        return "fail"
    if "pass" in statuses:
        return "pass"
    return "inapplicable"
