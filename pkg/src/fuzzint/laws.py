"""Executable checkers for the laws of seminormed fuzzy integrals.

Each checker returns a :class:`CheckReport`: "holds-on-sample" or "fails"
with a witness naming the violating inputs and both side values.  Grid
checks scan lexicographically (first loop variable outermost, ascending)
and always report the lexicographically first violation, so verdicts are
deterministic and reproducible -- also under multi-worker scans, where the
reducer keeps the lowest-index candidate.

The pointwise shift condition  S(c+a, b) <= S(c, b) + a  characterizes weak
subadditivity of the integral: any violating triple converts into a
two-point integral instance breaking  I(mu, f+a) <= I(mu, f) + a  via
:func:`witness_from_shift_violation`.  The analogous bridge for the
three-operator condition  S1(x+y, z) <= S2(x, z) + S3(y, z)  is
:func:`witness_from_three_violation`.  Right-hand sides saturate at 1; the
comparison is unaffected since the left side never exceeds 1.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .capacities import (
    Capacity,
    FiniteSpace,
    SimpleFunction,
    combine,
    pointwise_join,
    random_capacity,
    random_comonotone_pair,
    random_simple_function,
)
from .errors import ContractError, DomainError, PreconditionError
from .integrals import eval_integral, eval_integral_restricted
from .reports import CheckReport, failed, passed
from .semicopulas import MIN, PROD, BinaryOp, Semicopula, s_eval
from .values import (
    as_value,
    coerce_pair,
    eq_within,
    grid_values,
    joint_realization,
    leq_within,
    render_value,
    resolve_tolerance,
    v_add_clamped,
    v_join,
)

LAW_IDS = (
    "shift",
    "three",
    "weak-subadd",
    "restricted-subadd",
    "cor-a",
    "cor-b",
    "cor-c",
    "luka-dom",
    "maxitivity",
    "commuting",
    "idempotency",
)


def resolve_workers(workers=None) -> int:
    """Worker count for grid scans; FUZZINT_THREADS caps the default."""
    if workers is None:
        env = os.environ.get("FUZZINT_THREADS", "")
        workers = int(env) if env.strip() else 1
    return max(1, int(workers))


# ---------------------------------------------------------------------------
# Pointwise predicates (shared with the search module)
# ---------------------------------------------------------------------------

def shift_violation(S: BinaryOp, a, b, c, tol=0):
    """Sides (lhs, rhs) of S(c+a, b) <= S(c, b) + a if violated, else None."""
    lhs = s_eval(S, v_add_clamped(c, a), b)
    rhs = v_add_clamped(s_eval(S, c, b), a)
    if leq_within(lhs, rhs, tol):
        return None
    return lhs, rhs


def three_violation(S1, S2, S3, x, y, z, tol=0):
    """Sides of S1(x+y, z) <= S2(x, z) + S3(y, z) if violated, else None."""
    lhs = s_eval(S1, v_add_clamped(x, y), z)
    rhs = v_add_clamped(s_eval(S2, x, z), s_eval(S3, y, z))
    if leq_within(lhs, rhs, tol):
        return None
    return lhs, rhs


def dominance_violation(S: BinaryOp, x, y, tol=0):
    """Sides of S_L(x, y) <= S(x, y) if violated, else None."""
    from .semicopulas import LUKASIEWICZ

    lhs = s_eval(LUKASIEWICZ, x, y)
    rhs = s_eval(S, x, y)
    if leq_within(lhs, rhs, tol):
        return None
    return lhs, rhs


# ---------------------------------------------------------------------------
# Grid checks
# ---------------------------------------------------------------------------

def _admissible_pairs(grid, a, tol):
    """The grid prefix {c : a + c <= 1} with the clamped sums c + a."""
    cs = []
    for c in grid:
        if not leq_within(a + c, 1, tol):
            break
        cs.append((c, v_add_clamped(c, a)))
    return cs


def _shift_chunk(args):
    S, grid, lo, hi, tol = args
    for ia in range(lo, hi):
        a = grid[ia]
        pairs = _admissible_pairs(grid, a, tol)
        for b in grid:
            for c, ca in pairs:
                lhs = s_eval(S, ca, b)
                rhs = v_add_clamped(s_eval(S, c, b), a)
                if not leq_within(lhs, rhs, tol):
                    return {"semicopula": S.name, "a": a, "b": b, "c": c,
                            "lhs": lhs, "rhs": rhs}
    return None


def _three_chunk(args):
    S1, S2, S3, grid, lo, hi, tol = args
    for ix in range(lo, hi):
        x = grid[ix]
        pairs = _admissible_pairs(grid, x, tol)
        for y, xy in pairs:
            for z in grid:
                lhs = s_eval(S1, xy, z)
                rhs = v_add_clamped(s_eval(S2, x, z), s_eval(S3, y, z))
                if not leq_within(lhs, rhs, tol):
                    return {"semicopula": S1.name, "semicopula2": S2.name,
                            "semicopula3": S3.name, "x": x, "y": y, "z": z,
                            "lhs": lhs, "rhs": rhs}
    return None


def _scan_outer(chunk_fn, make_args, grid, workers):
    """Run a chunked lexicographic scan; the first chunk's witness wins."""
    workers = min(resolve_workers(workers), len(grid))
    if workers <= 1:
        return chunk_fn(make_args(0, len(grid)))
    bounds = []
    step = (len(grid) + workers - 1) // workers
    for lo in range(0, len(grid), step):
        bounds.append((lo, min(lo + step, len(grid))))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for result in pool.map(chunk_fn, [make_args(lo, hi) for lo, hi in bounds]):
            if result is not None:
                return result
    return None


def _shift_case_count(grid, tol) -> int:
    total = 0
    for a in grid:
        total += len(_admissible_pairs(grid, a, tol)) * len(grid)
    return total


def check_condition_shift(S: BinaryOp, grid_step, *, tolerance=None, workers=None) -> CheckReport:
    """Scan S(c+a, b) <= S(c, b) + a over all grid triples with a + c <= 1.

    Loop order is a, then b, then c (each ascending), so a fails verdict
    carries the lexicographically first violating triple.
    """
    grid = grid_values(grid_step)
    tol = resolve_tolerance(joint_realization(grid), tolerance)
    if getattr(S, "kind", "user") == "user":
        workers = 1
    witness = _scan_outer(
        _shift_chunk, lambda lo, hi: (S, grid, lo, hi, tol), grid, workers
    )
    desc = (f"semicopula={S.name} grid step {render_value(grid_step)}, "
            f"{_shift_case_count(grid, tol)} admissible triples")
    if witness is None:
        return passed("shift", desc)
    return failed("shift", witness, desc)


def check_condition_three(S1, S2, S3, grid_step, *, tolerance=None, workers=None) -> CheckReport:
    """Scan S1(x+y, z) <= S2(x, z) + S3(y, z) over grid triples with x + y <= 1."""
    grid = grid_values(grid_step)
    tol = resolve_tolerance(joint_realization(grid), tolerance)
    if any(getattr(s, "kind", "user") == "user" for s in (S1, S2, S3)):
        workers = 1
    witness = _scan_outer(
        _three_chunk, lambda lo, hi: (S1, S2, S3, grid, lo, hi, tol), grid, workers
    )
    desc = (f"semicopulas=({S1.name},{S2.name},{S3.name}) grid step "
            f"{render_value(grid_step)}, {_shift_case_count(grid, tol)} admissible triples")
    if witness is None:
        return passed("three", desc)
    return failed("three", witness, desc)


def check_lukasiewicz_dominated(S: BinaryOp, grid_step, *, tolerance=None) -> CheckReport:
    """Check the Lukasiewicz t-norm lower bound S_L <= S on the grid.

    The bound is the c + a = 1 slice of the shift condition, so every
    operator passing :func:`check_condition_shift` on a grid passes this
    check on the same grid.
    """
    grid = grid_values(grid_step)
    tol = resolve_tolerance(joint_realization(grid), tolerance)
    desc = f"semicopula={S.name} grid step {render_value(grid_step)}, {len(grid) ** 2} pairs"
    for x in grid:
        for y in grid:
            sides = dominance_violation(S, x, y, tol)
            if sides is not None:
                return failed(
                    "luka-dom",
                    {"semicopula": S.name, "x": x, "y": y,
                     "lhs": sides[0], "rhs": sides[1]},
                    desc,
                )
    return passed("luka-dom", desc)


# ---------------------------------------------------------------------------
# Integral-level instance checks
# ---------------------------------------------------------------------------

def _instance_tol(mu: Capacity, tolerance):
    return resolve_tolerance(mu.realization, tolerance)


def check_weak_subadditivity_instance(S: BinaryOp, mu: Capacity, f: SimpleFunction,
                                      a, *, tolerance=None) -> CheckReport:
    """One instance of I(mu, f+a) <= I(mu, f) + a; requires f + a <= 1."""
    tol = _instance_tol(mu, tolerance)
    lhs = eval_integral(S, mu, f.shifted(a, tolerance=tol)).value
    rhs = v_add_clamped(eval_integral(S, mu, f).value, a)
    if leq_within(lhs, rhs, tol):
        return passed("weak-subadd", "single instance")
    witness = {"semicopula": S.name, "capacity": mu, "f": f, "shift": a,
               "lhs": lhs, "rhs": rhs}
    return failed("weak-subadd", witness, "single instance")


def _restricted_check(law_id, S1, S2, S3, mu, f, a, mask, tolerance) -> CheckReport:
    tol = _instance_tol(mu, tolerance)
    shifted = f.shifted(a, tolerance=tol)
    lhs = eval_integral_restricted(S1, mu, shifted, mask).value
    const_a = SimpleFunction.constant(mu.space, a)
    rhs = v_add_clamped(
        eval_integral_restricted(S2, mu, f, mask).value,
        eval_integral_restricted(S3, mu, const_a, mask).value,
    )
    if leq_within(lhs, rhs, tol):
        return passed(law_id, "single instance")
    witness = {"semicopula": S1.name, "semicopula2": S2.name, "semicopula3": S3.name,
               "capacity": mu, "f": f, "shift": a,
               "restrict": mu.space.subset_key(mask), "lhs": lhs, "rhs": rhs}
    return failed(law_id, witness, "single instance")


def check_restricted_subadditivity_instance(S1, S2, S3, mu, f, a, mask, *,
                                            tolerance=None) -> CheckReport:
    """One instance of I_S1(mu,(f+a)1_A) <= I_S2(mu, f 1_A) + I_S3(mu, a 1_A)."""
    return _restricted_check("restricted-subadd", S1, S2, S3, mu, f, a, mask, tolerance)


_COROLLARY_THIRD = {"a": None, "b": MIN, "c": PROD}


def check_corollary_variant(variant: str, S, mu, f, a, mask, *, tolerance=None) -> CheckReport:
    """Restricted subadditivity with the third operator specialized.

    Variant "a" keeps S itself; "b" bounds the addend by a ∧ mu(A) (meet);
    "c" bounds it by a * mu(A) (product).  Both specializations are exactly
    the restricted integral of the constant a over A under min resp.
    product, so each variant delegates to the general three-operator check.
    """
    if variant not in _COROLLARY_THIRD:
        raise DomainError(f"variant must be one of a, b, c; got {variant!r}")
    S3 = _COROLLARY_THIRD[variant] or S
    return _restricted_check(f"cor-{variant}", S, S, S3, mu, f, a, mask, tolerance)


def is_comonotone(f: SimpleFunction, g: SimpleFunction, mask: int | None = None) -> bool:
    """(f(x) - f(y)) * (g(x) - g(y)) >= 0 for all point pairs in the subset."""
    if f.space != g.space:
        raise DomainError("functions live on different spaces")
    if mask is None:
        mask = f.space.full_mask
    idx = [i for i in range(f.space.n) if mask >> i & 1]
    for p, i in enumerate(idx):
        for j in idx[p + 1:]:
            df, dg = coerce_pair(f.values[i] - f.values[j], g.values[i] - g.values[j])
            if df * dg < 0:
                return False
    return True


def check_comonotone_maxitivity(S: BinaryOp, mu, f, g, *, tolerance=None) -> CheckReport:
    """I(mu, f v g) = I(mu, f) v I(mu, g) for comonotone f, g; exact on rationals."""
    if not is_comonotone(f, g):
        raise PreconditionError("maxitivity check requires comonotone functions")
    tol = _instance_tol(mu, tolerance)
    lhs = eval_integral(S, mu, pointwise_join(f, g)).value
    rhs = v_join(eval_integral(S, mu, f).value, eval_integral(S, mu, g).value)
    if eq_within(lhs, rhs, tol):
        return passed("maxitivity", "single instance")
    witness = {"semicopula": S.name, "capacity": mu, "f": f, "g": g,
               "lhs": lhs, "rhs": rhs}
    return failed("maxitivity", witness, "single instance")


def check_commuting_instance(S: BinaryOp, op: BinaryOp, mu, f, g, *, tolerance=None) -> CheckReport:
    """Does op commute with the integral on one comonotone pair:
    I(mu, f op g) = I(mu, f) op I(mu, g)?"""
    if not is_comonotone(f, g):
        raise PreconditionError("commuting check requires comonotone functions")
    tol = _instance_tol(mu, tolerance)
    lhs = eval_integral(S, mu, combine(op, f, g)).value
    rhs = s_eval(op, eval_integral(S, mu, f).value, eval_integral(S, mu, g).value)
    if eq_within(lhs, rhs, tol):
        return passed("commuting", "single instance")
    witness = {"semicopula": S.name, "op": op.name, "capacity": mu, "f": f, "g": g,
               "lhs": lhs, "rhs": rhs}
    return failed("commuting", witness, "single instance")


def idempotency_sides(op: BinaryOp, S: BinaryOp, x):
    """Both commuting sides on the two-point instance mu(A) = x, f = g = 1_A."""
    realization = "float" if isinstance(x, float) else "exact"
    space = FiniteSpace(("p1", "p2"))
    one = 1.0 if realization == "float" else Fraction(1)
    zero = 0.0 if realization == "float" else Fraction(0)
    f = SimpleFunction.indicator(space, 1, realization)
    mu = Capacity(space, (zero, x, x, one))
    lhs = eval_integral(S, mu, combine(op, f, f)).value
    level = eval_integral(S, mu, f).value
    rhs = s_eval(op, level, level)
    return lhs, rhs


def check_idempotency(op: BinaryOp, S: BinaryOp, grid_step, *, tolerance=None) -> CheckReport:
    """Extract the necessary condition x = x op x from commuting.

    For each grid value x the check builds the two-point capacity with
    mu(A) = x and compares both commuting sides on the pair f = g = 1_A.
    For any semicopula S the integral of an indicator is the measure of its
    support, so a discrepancy pins op(x, x) != x and certifies that op
    cannot commute with the integral.
    """
    grid = grid_values(grid_step)
    realization = joint_realization(grid)
    tol = resolve_tolerance(realization, tolerance)
    desc = (f"op={op.name} semicopula={S.name} grid step "
            f"{render_value(grid_step)}, {len(grid)} levels")
    for x in grid:
        lhs, rhs = idempotency_sides(op, S, x)
        if not eq_within(lhs, rhs, tol):
            return failed(
                "idempotency",
                {"op": op.name, "semicopula": S.name, "x": x, "lhs": lhs, "rhs": rhs},
                desc,
            )
    return passed("idempotency", desc)


# ---------------------------------------------------------------------------
# Necessity constructions: pointwise violation -> failing integral instance
# ---------------------------------------------------------------------------

def witness_from_shift_violation(S: BinaryOp, triple, *, tolerance=None):
    """Convert a violating shift triple (a, b, c) into a failing instance.

    Returns (mu, f, a) on the two-point space with mu = b on both
    singletons and f = (0, c): the integral of f + a is a v S(c+a, b) while
    the bound is S(c, b) + a, so the instance breaks weak subadditivity
    exactly when the triple breaks the shift condition.
    """
    a, b, c = (as_value(v) if not isinstance(v, (Fraction, float)) else v for v in triple)
    joint_realization((a, b, c))
    tol = resolve_tolerance(joint_realization((a, b, c)), tolerance)
    if not leq_within(a + c, 1, tol):
        raise ContractError(f"triple ({a}, {b}, {c}) is inadmissible: a + c > 1")
    if shift_violation(S, a, b, c, tol) is None:
        raise ContractError(
            f"triple ({render_value(a)}, {render_value(b)}, {render_value(c)}) "
            f"does not violate the shift condition for {S.name}"
        )
    space = FiniteSpace(("x1", "x2"))
    zero = type(b)(0) if isinstance(b, Fraction) else 0.0
    one = type(b)(1) if isinstance(b, Fraction) else 1.0
    mu = Capacity(space, (zero, b, b, one))
    f = SimpleFunction(space, (zero, c))
    return mu, f, a


def witness_from_three_violation(S1, S2, S3, triple, *, tolerance=None):
    """Convert a violating triple of the three-operator condition into a
    failing restricted-subadditivity instance (mu, f, a, mask).

    Uses f = x * 1_A with mu(A) = z on a two-point space, so all three
    restricted integrals collapse to the pointwise sides.
    """
    x, y, z = (as_value(v) if not isinstance(v, (Fraction, float)) else v for v in triple)
    tol = resolve_tolerance(joint_realization((x, y, z)), tolerance)
    if not leq_within(x + y, 1, tol):
        raise ContractError(f"triple ({x}, {y}, {z}) is inadmissible: x + y > 1")
    if three_violation(S1, S2, S3, x, y, z, tol) is None:
        raise ContractError(
            f"triple ({render_value(x)}, {render_value(y)}, {render_value(z)}) does "
            f"not violate the three-operator condition for "
            f"({S1.name}, {S2.name}, {S3.name})"
        )
    space = FiniteSpace(("x1", "x2"))
    zero = type(z)(0) if isinstance(z, Fraction) else 0.0
    one = type(z)(1) if isinstance(z, Fraction) else 1.0
    mu = Capacity(space, (zero, z, z, one))
    mask = 1  # A = {x1}
    f = SimpleFunction(space, (x, zero))
    return mu, f, y, mask


# ---------------------------------------------------------------------------
# Random instance suites (deterministic per seed; seeds split per index)
# ---------------------------------------------------------------------------

DEFAULT_SIZES = (1, 2, 3, 4, 5, 6)


def space_of_size(n: int) -> FiniteSpace:
    return FiniteSpace(tuple(f"p{i + 1}" for i in range(n)))


def _case_rng(seed: int, index: int) -> random.Random:
    return random.Random(seed * 1_000_003 + index)


def draw_comonotone_instance(rng, n, denominator):
    space = space_of_size(n)
    mu = random_capacity(space, rng=rng, denominator=denominator)
    f, g = random_comonotone_pair(space, rng=rng, denominator=denominator)
    return mu, f, g


def draw_weak_subadd_instance(rng, n, denominator):
    space = space_of_size(n)
    mu = random_capacity(space, rng=rng, denominator=denominator)
    f = random_simple_function(space, rng=rng, denominator=denominator)
    headroom = 1 - f.max_value()
    a = Fraction(rng.randint(0, int(headroom * denominator)), denominator)
    return mu, f, a


def draw_restricted_instance(rng, n, denominator):
    mu, f, a = draw_weak_subadd_instance(rng, n, denominator)
    mask = rng.randrange(mu.space.full_mask + 1)
    return mu, f, a, mask


def _suite(law_id, cases, seed, sizes, denominator, draw, check) -> CheckReport:
    desc = (f"cases={cases} seed={seed} sizes={min(sizes)}-{max(sizes)} "
            f"denominator={denominator}")
    for i in range(cases):
        rng = _case_rng(seed, i)
        instance = draw(rng, sizes[i % len(sizes)], denominator)
        report = check(instance)
        if not report.holds:
            return CheckReport(law_id, report.verdict, report.witness,
                               f"{desc}; first failure at case {i}")
    return passed(law_id, desc)


def run_maxitivity_suite(S, *, cases=1000, seed=0, sizes=DEFAULT_SIZES,
                         denominator=64, tolerance=None) -> CheckReport:
    """Random comonotone instances of the maxitivity identity."""
    return _suite(
        "maxitivity", cases, seed, sizes, denominator,
        draw_comonotone_instance,
        lambda inst: check_comonotone_maxitivity(S, *inst, tolerance=tolerance),
    )


def run_commuting_suite(S, op, *, cases=1000, seed=0, sizes=DEFAULT_SIZES,
                        denominator=64, tolerance=None) -> CheckReport:
    return _suite(
        "commuting", cases, seed, sizes, denominator,
        draw_comonotone_instance,
        lambda inst: check_commuting_instance(S, op, *inst, tolerance=tolerance),
    )


def run_weak_subadd_suite(S, *, cases=1000, seed=0, sizes=DEFAULT_SIZES,
                          denominator=64, tolerance=None) -> CheckReport:
    return _suite(
        "weak-subadd", cases, seed, sizes, denominator,
        draw_weak_subadd_instance,
        lambda inst: check_weak_subadditivity_instance(S, *inst, tolerance=tolerance),
    )


def run_restricted_subadd_suite(S1, S2, S3, *, cases=1000, seed=0, sizes=DEFAULT_SIZES,
                                denominator=64, tolerance=None) -> CheckReport:
    return _suite(
        "restricted-subadd", cases, seed, sizes, denominator,
        draw_restricted_instance,
        lambda inst: check_restricted_subadditivity_instance(
            S1, S2, S3, *inst, tolerance=tolerance),
    )


def run_corollary_suite(variant, S, *, cases=1000, seed=0, sizes=DEFAULT_SIZES,
                        denominator=64, tolerance=None) -> CheckReport:
    report = _suite(
        f"cor-{variant}", cases, seed, sizes, denominator,
        draw_restricted_instance,
        lambda inst: check_corollary_variant(variant, S, *inst, tolerance=tolerance),
    )
    return report
