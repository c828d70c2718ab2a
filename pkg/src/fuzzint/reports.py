"""Structured verdicts for law checks, audits and searches."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .values import json_value

HOLDS = "holds-on-sample"
FAILS = "fails"


def _jsonify(obj):
    if isinstance(obj, (Fraction, float, int)):
        return json_value(obj)
    if isinstance(obj, str) or obj is None:
        return obj
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if hasattr(obj, "to_json_dict"):
        return obj.to_json_dict()
    raise TypeError(f"cannot serialize {obj!r}")


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one law check.

    ``verdict`` is "holds-on-sample" or "fails" -- never "proved": grid and
    random suites are refutation-complete on their sample only.  A fails
    verdict always carries a ``witness`` naming the violating inputs and
    both side values; re-evaluating the witness reproduces the violation.
    ``partial`` flags a sample cut short by a search budget.
    """

    law_id: str
    verdict: str
    witness: dict[str, Any] | None = None
    sample_description: str = ""
    partial: bool = field(default=False, compare=True)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    def to_json_dict(self) -> dict:
        return {
            "law_id": self.law_id,
            "verdict": self.verdict,
            "witness": _jsonify(self.witness) if self.witness is not None else None,
            "sample_description": self.sample_description,
            "partial": self.partial,
        }


def passed(law_id: str, description: str, partial: bool = False) -> CheckReport:
    return CheckReport(law_id, HOLDS, None, description, partial)


def failed(law_id: str, witness: dict, description: str) -> CheckReport:
    return CheckReport(law_id, FAILS, witness, description)
