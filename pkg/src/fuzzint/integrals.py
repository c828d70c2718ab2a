"""Seminormed fuzzy integral of a simple function against a capacity.

The integral is sup over t in [0,1] of S(t, mu({f >= t})).  On a finite
space the map t -> mu({f >= t}) is a step function, constant between
consecutive distinct values of f, and S is non-decreasing in its first
argument, so the supremum over each constancy interval is attained at the
interval's right endpoint -- a value of f.  Scanning the distinct values of
f (plus the harmless t = 0 term S(0, mu(X)) = 0) therefore computes the
exact supremum without any continuity assumption on S.

A grid-supremum oracle is kept alongside for cross-validation: it scans a
uniform grid united with the values of f, so discontinuous semicopulas such
as the drastic product are still captured at their attaining thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass

from .capacities import Capacity, SimpleFunction, superlevel_measure
from .semicopulas import BinaryOp, s_eval
from .values import Value, grid_values, zero_like

EXACT_THRESHOLD = "exact-threshold"
GRID_ORACLE = "grid-oracle"


@dataclass(frozen=True)
class IntegralResult:
    """Integral value plus a threshold attaining it.

    Ties break toward the smallest attaining threshold, so results are
    deterministic and reproducible.
    """

    value: Value
    argmax_threshold: Value
    method: str

    def to_json_dict(self) -> dict:
        from .values import json_value

        return {
            "value": json_value(self.value),
            "argmax_t": json_value(self.argmax_threshold),
            "method": self.method,
        }


def _scan_thresholds(S: BinaryOp, mu: Capacity, f: SimpleFunction, thresholds, method: str) -> IntegralResult:
    best = None
    best_t = None
    for t in thresholds:
        term = s_eval(S, t, superlevel_measure(mu, f, t))
        if best is None or term > best:
            best, best_t = term, t
    return IntegralResult(best, best_t, method)


def eval_integral(S: BinaryOp, mu: Capacity, f: SimpleFunction) -> IntegralResult:
    """Exact evaluation over the distinct values of f (plus t = 0)."""
    zero = zero_like(f.values[0])
    thresholds = sorted(set(f.values) | {zero})
    return _scan_thresholds(S, mu, f, thresholds, EXACT_THRESHOLD)


def eval_integral_grid(S: BinaryOp, mu: Capacity, f: SimpleFunction, grid_step) -> IntegralResult:
    """Brute-force oracle: maximize over a uniform grid united with f's values."""
    thresholds = sorted(set(grid_values(grid_step)) | set(f.values))
    return _scan_thresholds(S, mu, f, thresholds, GRID_ORACLE)


def eval_integral_restricted(S: BinaryOp, mu: Capacity, f: SimpleFunction, mask: int) -> IntegralResult:
    """Integral of f * 1_A, materializing the restricted function."""
    return eval_integral(S, mu, f.restricted(mask))
