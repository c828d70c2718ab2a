"""Semicopulas, general binary operators on [0,1]^2, duals, and a grid auditor.

A semicopula is a binary operation on the unit square, non-decreasing in
each coordinate, with neutral element 1.  Four builtins are provided:

* ``MIN``          min(a, b) -- yields the classical Sugeno integral
* ``PROD``         a * b -- yields the Shilkret integral
* ``LUKASIEWICZ``  (a + b - 1) or 0, the Lukasiewicz t-norm
* ``DRASTIC``      min(a, b) if max(a, b) = 1, else 0

The drastic product is the stock example of a semicopula that breaks the
shift condition behind weak subadditivity, so refutation paths stay
demonstrable with builtins only.

``BinaryOp`` covers arbitrary operators (meet, join, duals, user closures)
used by the commuting-operator checks.  User-supplied evaluators are
float-only: nothing exact can be guaranteed through an opaque closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable

from .errors import SchemaError, UnsupportedRealizationError
from .reports import CheckReport, failed, passed
from .values import (
    Value,
    coerce_pair,
    eq_within,
    grid_values,
    joint_realization,
    leq_within,
    one_like,
    realization_of,
    render_value,
    resolve_tolerance,
    zero_like,
)


@dataclass(frozen=True)
class BinaryOp:
    """A total operator [0,1]^2 -> [0,1] with a claimed algebraic class."""

    name: str
    fn: Callable[[Value, Value], Value]
    claimed_class: str = "unconstrained"  # semicopula | t-coseminorm | unconstrained
    exact_ok: bool = True

    def __call__(self, x, y) -> Value:
        return s_eval(self, x, y)


@dataclass(frozen=True)
class Semicopula(BinaryOp):
    claimed_class: str = "semicopula"
    kind: str = "user"  # min | prod | lukasiewicz | drastic | user


def s_eval(op: BinaryOp, x, y) -> Value:
    """Evaluate an operator on a pair of same-realization scalars.

    Exact evaluation of a float-only (user-supplied) operator raises
    :class:`UnsupportedRealizationError`.  Output range is not revalidated
    here; audit untrusted operators with :func:`audit_axioms`.
    """
    x, y = coerce_pair(x, y)
    if not op.exact_ok and isinstance(x, Fraction):
        raise UnsupportedRealizationError(
            f"operator {op.name!r} evaluates in the float realization only"
        )
    return op.fn(x, y)


def _min_fn(x, y):
    return x if x <= y else y


def _max_fn(x, y):
    return x if x >= y else y


def _prod_fn(x, y):
    return x * y


def _lukasiewicz_fn(x, y):
    s = x + y - 1
    return s if s > 0 else zero_like(x)


def _drastic_fn(x, y):
    if x == 1:
        return y
    if y == 1:
        return x
    return zero_like(x)


MIN = Semicopula("min", _min_fn, kind="min")
PROD = Semicopula("prod", _prod_fn, kind="prod")
LUKASIEWICZ = Semicopula("lukasiewicz", _lukasiewicz_fn, kind="lukasiewicz")
DRASTIC = Semicopula("drastic", _drastic_fn, kind="drastic")

BUILTINS: tuple[Semicopula, ...] = (MIN, PROD, LUKASIEWICZ, DRASTIC)

MEET = BinaryOp("meet", _min_fn, claimed_class="semicopula")
JOIN = BinaryOp("join", _max_fn, claimed_class="t-coseminorm")


def user_semicopula(name: str, fn: Callable[[float, float], float]) -> Semicopula:
    """Wrap a caller-supplied pure evaluator; float realization only."""
    return Semicopula(name, fn, exact_ok=False, kind="user")


def user_binary_op(name, fn, claimed_class="unconstrained") -> BinaryOp:
    return BinaryOp(name, fn, claimed_class, exact_ok=False)


def _dual_fn(base, x, y):
    one = one_like(x)
    return one - base(one - x, one - y)


def coseminorm_of(op: BinaryOp) -> BinaryOp:
    """The dual operator (x, y) -> 1 - op(1 - x, 1 - y).

    Applied to a semicopula this yields its t-coseminorm; applying it twice
    reproduces the original values.
    """
    return BinaryOp(
        f"co:{op.name}",
        partial(_dual_fn, op.fn),
        claimed_class="t-coseminorm",
        exact_ok=op.exact_ok,
    )


_SEMICOPULAS = {s.name: s for s in BUILTINS}
_PLAIN_OPS = {"meet": MEET, "join": JOIN}


def semicopula_by_name(name: str) -> Semicopula:
    try:
        return _SEMICOPULAS[name]
    except KeyError:
        raise SchemaError(
            f"unknown semicopula {name!r}; expected one of {sorted(_SEMICOPULAS)}"
        ) from None


def binary_op_by_name(name: str) -> BinaryOp:
    """Resolve an operator name: builtins, "meet"/"join", or "co:<builtin>"."""
    if name in _PLAIN_OPS:
        return _PLAIN_OPS[name]
    if name in _SEMICOPULAS:
        return _SEMICOPULAS[name]
    if name.startswith("co:"):
        return coseminorm_of(semicopula_by_name(name[3:]))
    raise SchemaError(
        f"unknown operator {name!r}; expected meet, join, a semicopula name, "
        f"or co:<semicopula>"
    )


# ---------------------------------------------------------------------------
# Axiom audit
# ---------------------------------------------------------------------------

def audit_axioms(op: BinaryOp, grid_step, *, tolerance=None) -> CheckReport:
    """Audit semicopula axioms on the uniform grid {0, step, ..., 1}^2.

    Checks output range, neutrality of 1 in both coordinates, and
    coordinatewise monotonicity between adjacent grid points.  Pairs are
    scanned lexicographically and the first violating pair is reported with
    both values, so the verdict is deterministic.  Axioms of an opaque
    evaluator are undecidable in general; a pass verdict certifies the grid
    sample only.
    """
    grid = grid_values(grid_step)
    realization = joint_realization(grid)
    tol = resolve_tolerance(realization, tolerance)
    desc = f"grid step {render_value(grid_step)}, {len(grid)}^2 pairs"
    prev_row: list[Value] | None = None
    for i, x in enumerate(grid):
        row: list[Value] = []
        for j, y in enumerate(grid):
            v = s_eval(op, x, y)
            row.append(v)
            if not (-tol <= v <= 1 + tol):
                return failed(
                    "axioms",
                    {"axiom": "range", "x": x, "y": y, "lhs": v, "rhs": None},
                    desc,
                )
            if j == len(grid) - 1 and not eq_within(v, x, tol):
                return failed(
                    "axioms",
                    {"axiom": "neutrality", "x": x, "y": y, "lhs": v, "rhs": x},
                    desc,
                )
            if i == len(grid) - 1 and not eq_within(v, y, tol):
                return failed(
                    "axioms",
                    {"axiom": "neutrality", "x": x, "y": y, "lhs": v, "rhs": y},
                    desc,
                )
            if prev_row is not None and not leq_within(prev_row[j], v, tol):
                return failed(
                    "axioms",
                    {
                        "axiom": "monotone-first-arg",
                        "x": x,
                        "y": y,
                        "lhs": prev_row[j],
                        "rhs": v,
                    },
                    desc,
                )
            if j > 0 and not leq_within(row[j - 1], v, tol):
                return failed(
                    "axioms",
                    {
                        "axiom": "monotone-second-arg",
                        "x": x,
                        "y": y,
                        "lhs": row[j - 1],
                        "rhs": v,
                    },
                    desc,
                )
        prev_row = row
    return passed("axioms", desc)
