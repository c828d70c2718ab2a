"""Scalar domain: the unit interval in exact-rational and float realizations.

Every quantity in this package is a scalar in [0, 1].  Two realizations are
supported and never mixed silently:

* exact -- ``fractions.Fraction``, kept in lowest terms.  Equality is
  decidable, so law checks over exact data assert identities with zero
  tolerance.
* float -- IEEE doubles, for user-supplied operators that only exist in
  float form.  Comparisons then use an absolute tolerance (1e-9 unless
  configured otherwise).

Plain ints are accepted anywhere as realization-neutral constants: 0 and 1
are exactly representable in both realizations, so they adopt the
realization of whatever they are combined with.  A ``Fraction`` meeting a
``float`` raises :class:`RealizationMismatchError` instead of coercing.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Literal, Union

from .errors import DomainError, RealizationMismatchError, UnitIntervalError

Value = Union[Fraction, float]
Realization = Literal["exact", "float"]

EXACT: Realization = "exact"
FLOAT: Realization = "float"

DEFAULT_FLOAT_TOLERANCE = 1e-9


def realization_of(v) -> Realization | None:
    """Realization of a scalar; ``None`` for neutral ints."""
    if isinstance(v, Fraction):
        return EXACT
    if isinstance(v, float):
        return FLOAT
    if isinstance(v, int):
        return None
    raise TypeError(f"not a scalar value: {v!r}")


def joint_realization(values, default: Realization = EXACT) -> Realization:
    """Common realization of an iterable of scalars.

    Raises :class:`RealizationMismatchError` if both realizations occur;
    returns ``default`` when every value is a neutral int.
    """
    found: Realization | None = None
    for v in values:
        r = realization_of(v)
        if r is None:
            continue
        if found is None:
            found = r
        elif found != r:
            raise RealizationMismatchError(
                f"mixed exact and float scalars in one computation (saw {v!r})"
            )
    return found if found is not None else default


def _cast_int(i: int, realization: Realization) -> Value:
    return float(i) if realization == FLOAT else Fraction(i)


def coerce_pair(x, y) -> tuple[Value, Value]:
    """Unify two scalars to one realization, rejecting exact/float mixes."""
    rx, ry = realization_of(x), realization_of(y)
    if rx is None and ry is None:
        return Fraction(x), Fraction(y)
    if rx is None:
        return _cast_int(x, ry), y
    if ry is None:
        return x, _cast_int(y, rx)
    if rx != ry:
        raise RealizationMismatchError(
            f"cannot combine {rx} scalar {x!r} with {ry} scalar {y!r}"
        )
    return x, y


def as_value(x, realization: Realization | None = None) -> Value:
    """Validate and normalize ``x`` into a scalar in [0, 1].

    Accepts Fraction, int, float and str.  Strings parse exactly in the
    exact realization: "2/5", "0.4" and "1" all become Fraction(2, 5) /
    Fraction(1).  A Python float is rejected in exact mode (pass a string
    or Fraction instead), and a Fraction is rejected in float mode, so no
    silent cross-realization conversion can occur.
    """
    if isinstance(x, Fraction):
        if realization == FLOAT:
            raise RealizationMismatchError(
                f"exact value {x} given where a float was required"
            )
        v: Value = x
    elif isinstance(x, bool):
        raise TypeError(f"not a scalar value: {x!r}")
    elif isinstance(x, int):
        v = _cast_int(x, realization or EXACT)
    elif isinstance(x, float):
        if realization not in (None, FLOAT):
            raise RealizationMismatchError(
                f"float value {x!r} given where an exact rational was required; "
                f"pass a string like '2/5' or a Fraction"
            )
        if not math.isfinite(x):
            raise UnitIntervalError(f"value must be a finite number, got {x!r}")
        v = x
    elif isinstance(x, str):
        try:
            frac = Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise UnitIntervalError(f"cannot parse scalar from {x!r}: {exc}") from exc
        v = float(frac) if realization == FLOAT else frac
    else:
        raise TypeError(f"not a scalar value: {x!r}")
    if not 0 <= v <= 1:
        raise UnitIntervalError(f"value {x!r} lies outside [0, 1]")
    return v


def render_value(v) -> str:
    """Text form: exact values as "p/q", floats as shortest round-trip decimal."""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def json_value(v):
    """JSON form: exact values as strings, floats as JSON numbers."""
    if isinstance(v, Fraction):
        return str(v)
    return v


def zero_like(v) -> Value:
    return 0.0 if isinstance(v, float) else Fraction(0)


def one_like(v) -> Value:
    return 1.0 if isinstance(v, float) else Fraction(1)


# ---------------------------------------------------------------------------
# Lattice and clamped arithmetic
# ---------------------------------------------------------------------------

def v_join(x, y) -> Value:
    """x or y, whichever is larger (max)."""
    x, y = coerce_pair(x, y)
    return x if x >= y else y


def v_meet(x, y) -> Value:
    """x or y, whichever is smaller (min)."""
    x, y = coerce_pair(x, y)
    return x if x <= y else y


def v_add_clamped(x, y) -> Value:
    """(x + y) saturated at 1."""
    x, y = coerce_pair(x, y)
    s = x + y
    return s if s <= 1 else one_like(s)


def v_sub_floored(x, y) -> Value:
    """(x - y) floored at 0."""
    x, y = coerce_pair(x, y)
    d = x - y
    return d if d >= 0 else zero_like(d)


# ---------------------------------------------------------------------------
# Tolerant comparisons (float realization) / exact comparisons (rationals)
# ---------------------------------------------------------------------------

def resolve_tolerance(realization: Realization, tolerance=None):
    """Comparison tolerance for a check: 0 for exact data, 1e-9 for floats."""
    if tolerance is None:
        return 0 if realization == EXACT else DEFAULT_FLOAT_TOLERANCE
    if tolerance < 0:
        raise DomainError(f"tolerance must be >= 0, got {tolerance!r}")
    return tolerance


def leq_within(x, y, tol=0) -> bool:
    """x <= y, up to an absolute slack of ``tol``."""
    if tol:
        return x <= y + tol
    return x <= y


def eq_within(x, y, tol=0) -> bool:
    """x == y, up to an absolute slack of ``tol``."""
    if tol:
        return abs(x - y) <= tol
    return x == y


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------

def grid_values(step) -> list[Value]:
    """The uniform grid {0, step, 2*step, ...} capped with 1.

    ``step`` must lie in (0, 1/2].  When step does not divide 1, the point 1
    is still appended so the grid always contains both endpoints.
    """
    step = as_value(step) if not isinstance(step, (Fraction, float)) else step
    if not 0 < step <= Fraction(1, 2):
        raise DomainError(f"grid step must be in (0, 1/2], got {render_value(step)}")
    vals: list[Value] = []
    if isinstance(step, float):
        i = 0
        while (v := i * step) < 1.0 - 1e-12:
            vals.append(v)
            i += 1
        vals.append(1.0)
    else:
        k = 0
        while (v := k * step) < 1:
            vals.append(v)
            k += 1
        vals.append(Fraction(1))
    return vals


def denominator_grid(denominator: int) -> list[Fraction]:
    """All fractions k/denominator for k = 0..denominator."""
    if not 1 <= denominator <= 64:
        raise DomainError(f"denominator must be in 1..64, got {denominator!r}")
    return [Fraction(k, denominator) for k in range(denominator + 1)]
