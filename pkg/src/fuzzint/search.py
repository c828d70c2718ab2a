"""Systematic counterexample hunting for pointwise and integral-level laws.

Pointwise inequalities are scanned exhaustively over a rational grid in a
fixed lexicographic order, so the first witness is well defined.  Integral
laws enumerate capacities (grid-valued tables repaired to their monotone
envelope, deduplicated) and function pairs on a small space when the case
bound fits the budget, and otherwise fall back to seeded random sampling.
Identical specs, including the seed, always yield identical reports.

Every witness serializes to JSON, reusing the capacity/function document
schemas, and replays through the corresponding checker via
:func:`replay_witness` with the same verdict and side values.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import laws
from .capacities import (
    Capacity,
    FiniteSpace,
    SimpleFunction,
    capacity_from_json,
    function_from_json,
    mask_from_key,
    monotone_envelope,
)
from .errors import DomainError, SchemaError
from .laws import (
    check_commuting_instance,
    check_comonotone_maxitivity,
    check_corollary_variant,
    check_restricted_subadditivity_instance,
    check_weak_subadditivity_instance,
    dominance_violation,
    shift_violation,
    space_of_size,
    three_violation,
)
from .reports import CheckReport, failed, passed
from .semicopulas import BinaryOp, Semicopula, s_eval, semicopula_by_name, binary_op_by_name
from .values import EXACT, as_value, denominator_grid, resolve_tolerance

POINTWISE_LAWS = ("shift", "three", "luka-dom", "idempotency")
INTEGRAL_LAWS = ("weak-subadd", "restricted-subadd", "cor-a", "cor-b", "cor-c",
                 "maxitivity", "commuting")


@dataclass(frozen=True)
class SearchSpec:
    """What to hunt: a law, operator bindings, and enumeration limits."""

    law_id: str
    semicopula: Semicopula | None = None
    semicopula2: Semicopula | None = None
    semicopula3: Semicopula | None = None
    op: BinaryOp | None = None
    n: int = 2
    denominator: int = 10
    budget: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.law_id not in POINTWISE_LAWS + INTEGRAL_LAWS:
            raise DomainError(f"unknown searchable law {self.law_id!r}")
        if not 1 <= self.n <= 6:
            raise DomainError(f"space size must be in 1..6, got {self.n}")
        if not 1 <= self.denominator <= 64:
            raise DomainError(f"denominator must be in 1..64, got {self.denominator}")
        if self.budget < 1:
            raise DomainError(f"budget must be >= 1, got {self.budget}")

    def _semis(self):
        s1 = self.semicopula
        if s1 is None:
            raise DomainError(f"law {self.law_id!r} needs a semicopula binding")
        return s1, self.semicopula2 or s1, self.semicopula3 or s1


def _partial_pass(law_id, count, total, spec: SearchSpec) -> CheckReport:
    return passed(
        law_id,
        f"budget exhausted after {count} of {total} cases "
        f"(d={spec.denominator}, budget={spec.budget})",
        partial=True,
    )


# ---------------------------------------------------------------------------
# Pointwise search
# ---------------------------------------------------------------------------

def search_pointwise(spec: SearchSpec) -> CheckReport:
    """Exhaustive lexicographic scan of a pointwise law on the d-grid.

    Stops at the first violation or when the budget runs out; a verdict cut
    short by the budget is flagged partial.
    """
    if spec.law_id not in POINTWISE_LAWS:
        raise DomainError(f"{spec.law_id!r} is not a pointwise law")
    grid = denominator_grid(spec.denominator)
    tol = 0
    count = 0

    if spec.law_id == "shift":
        S = spec._semis()[0]
        total = sum(len(grid) - k for k in range(len(grid))) * len(grid)
        for ia, a in enumerate(grid):
            for b in grid:
                for c in grid[: len(grid) - ia]:
                    if count >= spec.budget:
                        return _partial_pass("shift", count, total, spec)
                    count += 1
                    sides = shift_violation(S, a, b, c, tol)
                    if sides:
                        return failed(
                            "shift",
                            {"semicopula": S.name, "a": a, "b": b, "c": c,
                             "lhs": sides[0], "rhs": sides[1]},
                            f"exhaustive scan, violation at case {count} of {total}",
                        )
        return passed("shift", f"exhaustive scan, {count} admissible triples")

    if spec.law_id == "three":
        S1, S2, S3 = spec._semis()
        total = sum((len(grid) - k) * len(grid) for k in range(len(grid)))
        for ix, x in enumerate(grid):
            for y in grid[: len(grid) - ix]:
                for z in grid:
                    if count >= spec.budget:
                        return _partial_pass("three", count, total, spec)
                    count += 1
                    sides = three_violation(S1, S2, S3, x, y, z, tol)
                    if sides:
                        return failed(
                            "three",
                            {"semicopula": S1.name, "semicopula2": S2.name,
                             "semicopula3": S3.name, "x": x, "y": y, "z": z,
                             "lhs": sides[0], "rhs": sides[1]},
                            f"exhaustive scan, violation at case {count} of {total}",
                        )
        return passed("three", f"exhaustive scan, {count} admissible triples")

    if spec.law_id == "luka-dom":
        S = spec._semis()[0]
        total = len(grid) ** 2
        for x in grid:
            for y in grid:
                if count >= spec.budget:
                    return _partial_pass("luka-dom", count, total, spec)
                count += 1
                sides = dominance_violation(S, x, y, tol)
                if sides:
                    return failed(
                        "luka-dom",
                        {"semicopula": S.name, "x": x, "y": y,
                         "lhs": sides[0], "rhs": sides[1]},
                        f"exhaustive scan, violation at case {count} of {total}",
                    )
        return passed("luka-dom", f"exhaustive scan, {count} pairs")

    # idempotency: one case per grid level
    if spec.op is None:
        raise DomainError("idempotency search needs an op binding")
    S = spec._semis()[0]
    report = laws.check_idempotency(spec.op, S, Fraction(1, spec.denominator))
    return CheckReport("idempotency", report.verdict, report.witness,
                       f"exhaustive scan, {len(grid)} levels")


# ---------------------------------------------------------------------------
# Integral-law search
# ---------------------------------------------------------------------------

def _enumerate_capacities(space: FiniteSpace, grid) -> list[Capacity]:
    """All grid-valued capacities obtained by monotone-envelope repair of raw
    tables, in raw lexicographic order, deduplicated keep-first."""
    proper = [m for m in range(1, space.full_mask)]
    caps: list[Capacity] = []
    seen = set()
    zero, one = Fraction(0), Fraction(1)
    for raw_vals in itertools.product(grid, repeat=len(proper)):
        raw = [zero] * (space.full_mask + 1)
        for m, v in zip(proper, raw_vals):
            raw[m] = v
        raw[space.full_mask] = one
        values = monotone_envelope(space, raw)
        if values not in seen:
            seen.add(values)
            caps.append(Capacity(space, values))
    return caps


def _tuples_comonotone(fv, gv) -> bool:
    n = len(fv)
    for i in range(n):
        for j in range(i + 1, n):
            if (fv[i] - fv[j]) * (gv[i] - gv[j]) < 0:
                return False
    return True


def _check_for(spec: SearchSpec):
    """The per-instance checker bound to the spec's operators."""
    law = spec.law_id
    if law in ("maxitivity", "commuting"):
        S = spec._semis()[0]
        if law == "maxitivity":
            return lambda mu, f, g: check_comonotone_maxitivity(S, mu, f, g)
        if spec.op is None:
            raise DomainError("commuting search needs an op binding")
        return lambda mu, f, g: check_commuting_instance(S, spec.op, mu, f, g)
    if law == "weak-subadd":
        S = spec._semis()[0]
        return lambda mu, f, a: check_weak_subadditivity_instance(S, mu, f, a)
    if law == "restricted-subadd":
        S1, S2, S3 = spec._semis()
        return lambda mu, f, a, mask: check_restricted_subadditivity_instance(
            S1, S2, S3, mu, f, a, mask)
    variant = law[len("cor-"):]
    S = spec._semis()[0]
    return lambda mu, f, a, mask: check_corollary_variant(variant, S, mu, f, a, mask)


def _case_bound(spec: SearchSpec) -> int:
    g = spec.denominator + 1
    caps = g ** (2 ** spec.n - 2)
    if spec.law_id in ("maxitivity", "commuting"):
        return caps * g ** (2 * spec.n)
    funcs = g ** spec.n
    masks = 2 ** spec.n if spec.law_id != "weak-subadd" else 1
    return caps * funcs * g * masks


def _exhaustive_cases(spec: SearchSpec, space, grid):
    """Lexicographic instance stream for the spec's law."""
    caps = _enumerate_capacities(space, grid)
    law = spec.law_id
    if law in ("maxitivity", "commuting"):
        funcs = list(itertools.product(grid, repeat=space.n))
        for mu in caps:
            for fv in funcs:
                for gv in funcs:
                    if _tuples_comonotone(fv, gv):
                        yield mu, SimpleFunction(space, fv), SimpleFunction(space, gv)
        return
    funcs = list(itertools.product(grid, repeat=space.n))
    masks = range(space.full_mask + 1) if law != "weak-subadd" else (None,)
    for mu in caps:
        for fv in funcs:
            f = SimpleFunction(space, fv)
            max_k = int((1 - max(fv)) * spec.denominator)
            for k in range(max_k + 1):
                a = Fraction(k, spec.denominator)
                for mask in masks:
                    yield (mu, f, a) if mask is None else (mu, f, a, mask)


def _sampled_cases(spec: SearchSpec, rng):
    law = spec.law_id
    while True:
        if law in ("maxitivity", "commuting"):
            yield laws.draw_comonotone_instance(rng, spec.n, spec.denominator)
        elif law == "weak-subadd":
            yield laws.draw_weak_subadd_instance(rng, spec.n, spec.denominator)
        else:
            yield laws.draw_restricted_instance(rng, spec.n, spec.denominator)


def search_integral_law(spec: SearchSpec) -> CheckReport:
    """Hunt for an integral-level violation of the spec's law.

    When the case bound fits the budget the scan is exhaustive (and the
    reported case count equals the number of admissible instances);
    otherwise ``budget`` instances are sampled from the seeded generators.
    The first violating instance is reported with its full serialization.
    """
    if spec.law_id not in INTEGRAL_LAWS:
        raise DomainError(f"{spec.law_id!r} is not an integral-level law")
    space = space_of_size(spec.n)
    grid = denominator_grid(spec.denominator)
    check = _check_for(spec)

    exhaustive = _case_bound(spec) <= spec.budget
    if exhaustive:
        cases = _exhaustive_cases(spec, space, grid)
        mode = "exhaustive"
    else:
        cases = _sampled_cases(spec, random.Random(spec.seed))
        mode = f"sampled (seed {spec.seed})"

    count = 0
    for instance in cases:
        if count >= spec.budget:
            return passed(
                spec.law_id,
                f"{mode}, budget exhausted after {count} cases",
                partial=True,
            )
        count += 1
        report = check(*instance)
        if not report.holds:
            return failed(
                spec.law_id,
                report.witness,
                f"{mode}, violation at case {count}",
            )
    return passed(spec.law_id, f"{mode}, {count} cases, complete enumeration")


def run_search(spec: SearchSpec) -> CheckReport:
    """Dispatch a spec to the pointwise or integral engine."""
    if spec.law_id in POINTWISE_LAWS:
        return search_pointwise(spec)
    return search_integral_law(spec)


# ---------------------------------------------------------------------------
# Witness replay
# ---------------------------------------------------------------------------

def replay_witness(law_id: str, witness: dict, *, realization=EXACT, tolerance=None) -> CheckReport:
    """Re-run a serialized witness through the corresponding checker.

    The witness must be self-contained: operator names resolvable to
    builtins, and capacity/function documents in their JSON schemas.
    A sound witness replays with verdict "fails" and identical sides.
    """
    def val(key):
        return as_value(witness[key], realization)

    if law_id == "shift":
        S = semicopula_by_name(witness["semicopula"])
        a, b, c = val("a"), val("b"), val("c")
        tol = resolve_tolerance(realization, tolerance)
        sides = shift_violation(S, a, b, c, tol)
        desc = "witness replay"
        if sides is None:
            return passed("shift", desc)
        return failed("shift", {"semicopula": S.name, "a": a, "b": b, "c": c,
                                "lhs": sides[0], "rhs": sides[1]}, desc)
    if law_id == "three":
        S1 = semicopula_by_name(witness["semicopula"])
        S2 = semicopula_by_name(witness["semicopula2"])
        S3 = semicopula_by_name(witness["semicopula3"])
        x, y, z = val("x"), val("y"), val("z")
        tol = resolve_tolerance(realization, tolerance)
        sides = three_violation(S1, S2, S3, x, y, z, tol)
        desc = "witness replay"
        if sides is None:
            return passed("three", desc)
        return failed("three", {"semicopula": S1.name, "semicopula2": S2.name,
                                "semicopula3": S3.name, "x": x, "y": y, "z": z,
                                "lhs": sides[0], "rhs": sides[1]}, desc)
    if law_id == "luka-dom":
        S = semicopula_by_name(witness["semicopula"])
        x, y = val("x"), val("y")
        tol = resolve_tolerance(realization, tolerance)
        sides = dominance_violation(S, x, y, tol)
        desc = "witness replay"
        if sides is None:
            return passed("luka-dom", desc)
        return failed("luka-dom", {"semicopula": S.name, "x": x, "y": y,
                                   "lhs": sides[0], "rhs": sides[1]}, desc)
    if law_id == "idempotency":
        op = binary_op_by_name(witness["op"])
        S = semicopula_by_name(witness["semicopula"])
        x = val("x")
        lhs, rhs = laws.idempotency_sides(op, S, x)
        tol = resolve_tolerance(realization, tolerance)
        if eq_within(lhs, rhs, tol):
            return passed("idempotency", "witness replay")
        return failed("idempotency", {"op": op.name, "semicopula": S.name,
                                      "x": x, "lhs": lhs, "rhs": rhs}, "witness replay")

    mu = capacity_from_json(witness["capacity"], realization)
    f = function_from_json(witness["f"], mu.space, realization)
    if law_id == "weak-subadd":
        S = semicopula_by_name(witness["semicopula"])
        return check_weak_subadditivity_instance(S, mu, f, val("shift"),
                                                 tolerance=tolerance)
    if law_id in ("restricted-subadd", "cor-a", "cor-b", "cor-c"):
        S1 = semicopula_by_name(witness["semicopula"])
        mask = _mask_from_key(mu.space, witness["restrict"])
        if law_id == "restricted-subadd":
            S2 = semicopula_by_name(witness["semicopula2"])
            S3 = semicopula_by_name(witness["semicopula3"])
            return check_restricted_subadditivity_instance(
                S1, S2, S3, mu, f, val("shift"), mask, tolerance=tolerance)
        return check_corollary_variant(law_id[len("cor-"):], S1, mu, f,
                                       val("shift"), mask, tolerance=tolerance)
    g = function_from_json(witness["g"], mu.space, realization)
    if law_id == "maxitivity":
        S = semicopula_by_name(witness["semicopula"])
        return check_comonotone_maxitivity(S, mu, f, g, tolerance=tolerance)
    if law_id == "commuting":
        S = semicopula_by_name(witness["semicopula"])
        op = binary_op_by_name(witness["op"])
        return check_commuting_instance(S, op, mu, f, g, tolerance=tolerance)
    raise SchemaError(f"cannot replay witnesses for law {law_id!r}")
