"""Finite measurable spaces, capacities on their powersets, simple functions.

A space is an ordered list of up to 16 distinct point labels; subsets are
n-bit masks over point indices, so a capacity is a dense table of 2^n
scalars indexed by mask.  Dense tables keep monotonicity checking
O(n * 2^n) and exact.

Random generators (uniform rationals with denominator <= 64, repaired to a
monotone envelope) feed the property suites; they are deterministic per
seed and every generated object satisfies its validator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, DomainError, RealizationMismatchError, SchemaError
from .semicopulas import BinaryOp, s_eval
from .values import (
    EXACT,
    FLOAT,
    Realization,
    Value,
    as_value,
    coerce_pair,
    joint_realization,
    json_value,
    v_join,
    v_meet,
)

MAX_POINTS = 16

_EMPTY_KEYS = ("∅", "")


@dataclass(frozen=True)
class FiniteSpace:
    """An ordered finite point set; subsets are bitmasks over point indices."""

    points: tuple[str, ...]

    def __post_init__(self):
        if not 1 <= len(self.points) <= MAX_POINTS:
            raise DomainError(
                f"space must have 1..{MAX_POINTS} points, got {len(self.points)}"
            )
        if len(set(self.points)) != len(self.points):
            raise DomainError(f"point labels must be unique: {self.points}")

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def mask_of(self, labels) -> int:
        mask = 0
        for label in labels:
            try:
                mask |= 1 << self.points.index(label)
            except ValueError:
                raise SchemaError(
                    f"unknown point label {label!r}; space has {list(self.points)}"
                ) from None
        return mask

    def labels_of(self, mask: int) -> tuple[str, ...]:
        return tuple(p for i, p in enumerate(self.points) if mask >> i & 1)

    def subset_key(self, mask: int) -> str:
        """Canonical text key for a subset: comma-joined labels in point order."""
        return ",".join(self.labels_of(mask)) if mask else "∅"


def make_space(labels) -> FiniteSpace:
    return FiniteSpace(tuple(labels))


def _describe(space: FiniteSpace, mask: int) -> str:
    return "{" + ",".join(space.labels_of(mask)) + "}" if mask else "∅"


@dataclass(frozen=True)
class Capacity:
    """A normalized monotone set function on the full powerset of a space.

    Construct through :func:`validate_capacity` (or the JSON loader); direct
    construction skips the axiom checks and is meant for trusted code.
    """

    space: FiniteSpace
    values: tuple[Value, ...]

    @property
    def realization(self) -> Realization:
        return joint_realization(self.values)

    def __getitem__(self, mask: int) -> Value:
        return self.values[mask]

    def to_float(self) -> "Capacity":
        return Capacity(self.space, tuple(float(v) for v in self.values))

    def to_json_dict(self) -> dict:
        mu = {
            self.space.subset_key(mask): json_value(self.values[mask])
            for mask in range(1, self.space.full_mask + 1)
        }
        return {"points": list(self.space.points), "mu": mu}


@dataclass(frozen=True)
class SimpleFunction:
    """A [0,1]-valued function on a finite point set, given pointwise."""

    space: FiniteSpace
    values: tuple[Value, ...]

    def __post_init__(self):
        if len(self.values) != self.space.n:
            raise DomainError(
                f"function needs {self.space.n} values, got {len(self.values)}"
            )

    @property
    def realization(self) -> Realization:
        return joint_realization(self.values)

    def __call__(self, label: str) -> Value:
        return self.values[self.space.points.index(label)]

    def max_value(self) -> Value:
        return max(self.values)

    def min_value(self) -> Value:
        return min(self.values)

    @classmethod
    def constant(cls, space: FiniteSpace, v) -> "SimpleFunction":
        v = as_value(v) if not isinstance(v, (Fraction, float)) else v
        return cls(space, (v,) * space.n)

    @classmethod
    def indicator(cls, space: FiniteSpace, mask: int, realization: Realization = EXACT) -> "SimpleFunction":
        one = 1.0 if realization == FLOAT else Fraction(1)
        zero = 0.0 if realization == FLOAT else Fraction(0)
        return cls(space, tuple(one if mask >> i & 1 else zero for i in range(space.n)))

    def shifted(self, a, *, tolerance=0) -> "SimpleFunction":
        """The function f + a; requires f + a <= 1 pointwise (no clamping hides
        a violation -- the tolerance only absorbs float rounding)."""
        shifted = []
        for v in self.values:
            v, a2 = coerce_pair(v, a)
            s = v + a2
            if s > 1 + tolerance:
                raise DomainError(
                    f"shift by {a!r} pushes value {v!r} above 1; f + a must stay in [0, 1]"
                )
            shifted.append(s if s <= 1 else (1.0 if isinstance(s, float) else Fraction(1)))
        return SimpleFunction(self.space, tuple(shifted))

    def restricted(self, mask: int) -> "SimpleFunction":
        """f * 1_A: keep values on the subset, zero elsewhere."""
        zero = 0.0 if self.realization == FLOAT else Fraction(0)
        return SimpleFunction(
            self.space,
            tuple(v if mask >> i & 1 else zero for i, v in enumerate(self.values)),
        )

    def to_float(self) -> "SimpleFunction":
        return SimpleFunction(self.space, tuple(float(v) for v in self.values))

    def to_json_dict(self) -> dict:
        return {
            "f": {p: json_value(v) for p, v in zip(self.space.points, self.values)}
        }


def simple_function(space: FiniteSpace, values, realization: Realization | None = None) -> SimpleFunction:
    """Build a function from per-point values (sequence or label mapping)."""
    if isinstance(values, dict):
        missing = [p for p in space.points if p not in values]
        if missing:
            raise SchemaError(f"function is missing values for points {missing}")
        extra = [k for k in values if k not in space.points]
        if extra:
            raise SchemaError(f"function names unknown points {extra}")
        seq = [values[p] for p in space.points]
    else:
        seq = list(values)
    normalized = tuple(as_value(v, realization) for v in seq)
    joint_realization(normalized)
    return SimpleFunction(space, normalized)


def pointwise_join(f: SimpleFunction, g: SimpleFunction) -> SimpleFunction:
    _same_space(f, g)
    return SimpleFunction(f.space, tuple(v_join(a, b) for a, b in zip(f.values, g.values)))


def pointwise_meet(f: SimpleFunction, g: SimpleFunction) -> SimpleFunction:
    _same_space(f, g)
    return SimpleFunction(f.space, tuple(v_meet(a, b) for a, b in zip(f.values, g.values)))


def combine(op: BinaryOp, f: SimpleFunction, g: SimpleFunction) -> SimpleFunction:
    """The pointwise image (f op g)(x) = op(f(x), g(x))."""
    _same_space(f, g)
    return SimpleFunction(
        f.space, tuple(s_eval(op, a, b) for a, b in zip(f.values, g.values))
    )


def _same_space(f: SimpleFunction, g: SimpleFunction):
    if f.space != g.space:
        raise DomainError("functions live on different spaces")


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_capacity(space: FiniteSpace, table, *, complete: str | None = None,
                      realization: Realization | None = None) -> Capacity:
    """Validate a raw subset->value table into a Capacity.

    ``table`` maps masks (or label iterables) to scalars.  It must cover all
    2^n masks unless ``complete="lower-envelope"`` is given, in which case
    unspecified subsets receive the monotone lower envelope
    max{mu(B) : B subseteq A, B specified} with mu(empty)=0 and mu(X)=1
    forced.  Checks run in the order: empty set, monotonicity over covering
    pairs (A, A + {x}), normalization; the first breach raises
    :class:`CapacityError` naming the constraint and the witnessing pair.
    """
    if complete not in (None, "lower-envelope"):
        raise SchemaError(f"unknown completion mode {complete!r}")
    full = space.full_mask
    raw: dict[int, Value] = {}
    for key, val in table.items():
        mask = key if isinstance(key, int) else space.mask_of(key)
        if not 0 <= mask <= full:
            raise SchemaError(f"subset mask {mask} out of range for space {space.points}")
        if mask in raw:
            raise SchemaError(
                f"duplicate entries for subset {_describe(space, mask)}"
            )
        raw[mask] = as_value(val, realization)
    joint_realization(raw.values())
    want_float = realization == FLOAT or any(isinstance(v, float) for v in raw.values())
    zero: Value = 0.0 if want_float else Fraction(0)
    one: Value = 1.0 if want_float else Fraction(1)

    if complete == "lower-envelope":
        values = [zero] * (full + 1)
        for mask in range(full + 1):
            if mask in raw:
                values[mask] = raw[mask]
            else:
                best = zero
                for i in range(space.n):
                    if mask >> i & 1:
                        sub = values[mask & ~(1 << i)]
                        if sub > best:
                            best = sub
                values[mask] = best
        if 0 not in raw:
            values[0] = zero
        if full not in raw:
            values[full] = one
    else:
        missing = [m for m in range(full + 1) if m not in raw and m != 0]
        if missing:
            raise CapacityError(
                "coverage",
                f"no value for subset {_describe(space, missing[0])} and no "
                f"completion mode requested",
                (missing[0],),
            )
        values = [raw.get(m, zero) for m in range(full + 1)]

    if values[0] != 0:
        raise CapacityError(
            "empty-set", f"mu(∅) must be 0, got {values[0]!r}", (0,)
        )
    for mask in range(1, full + 1):
        for i in range(space.n):
            if mask >> i & 1:
                sub = mask & ~(1 << i)
                if values[sub] > values[mask]:
                    raise CapacityError(
                        "monotonicity",
                        f"mu({_describe(space, sub)}) = {values[sub]!r} exceeds "
                        f"mu({_describe(space, mask)}) = {values[mask]!r}",
                        (sub, mask, values[sub], values[mask]),
                    )
    if values[full] != 1:
        raise CapacityError(
            "normalization", f"mu(X) must be 1, got {values[full]!r}", (full,)
        )
    return Capacity(space, tuple(values))


def superlevel_measure(mu: Capacity, f: SimpleFunction, t) -> Value:
    """mu({x : f(x) >= t}) -- the capacity of a superlevel set."""
    if mu.space != f.space:
        raise DomainError("capacity and function live on different spaces")
    for v in f.values:
        coerce_pair(v, t)  # realization guard
    mask = 0
    for i, v in enumerate(f.values):
        if v >= t:
            mask |= 1 << i
    return mu.values[mask]


# ---------------------------------------------------------------------------
# Random generation (deterministic per seed)
# ---------------------------------------------------------------------------

def _rng_of(seed, rng) -> random.Random:
    if rng is not None:
        return rng
    return random.Random(seed)


def monotone_envelope(space: FiniteSpace, raw: list[Fraction]) -> tuple[Fraction, ...]:
    """Repair a raw per-mask table upward into a valid capacity table."""
    values = list(raw)
    values[0] = Fraction(0)
    full = space.full_mask
    for mask in range(1, full + 1):
        best = values[mask]
        for i in range(space.n):
            if mask >> i & 1:
                sub = values[mask & ~(1 << i)]
                if sub > best:
                    best = sub
        values[mask] = best
    values[full] = Fraction(1)
    return tuple(values)


def random_capacity(space: FiniteSpace, seed=None, *, rng: random.Random | None = None,
                    mode: str = "monotone", denominator: int = 64) -> Capacity:
    """A random capacity with grid values k/denominator.

    Modes: "monotone" draws an i.i.d. table and repairs it to its monotone
    envelope; "additive" draws point weights and sums them; "possibility"
    draws point weights (max forced to 1) and takes maxima.
    """
    r = _rng_of(seed, rng)
    if not 1 <= denominator <= 64:
        raise DomainError(f"denominator must be in 1..64, got {denominator!r}")
    full = space.full_mask
    if mode == "monotone":
        raw = [Fraction(r.randint(0, denominator), denominator) for _ in range(full + 1)]
        return Capacity(space, monotone_envelope(space, raw))
    if mode == "additive":
        while True:
            weights = [r.randint(0, denominator) for _ in range(space.n)]
            total = sum(weights)
            if total:
                break
        w = [Fraction(k, total) for k in weights]
        values = tuple(
            sum((w[i] for i in range(space.n) if mask >> i & 1), Fraction(0))
            for mask in range(full + 1)
        )
        return Capacity(space, values)
    if mode == "possibility":
        pi = [Fraction(r.randint(0, denominator), denominator) for _ in range(space.n)]
        pi[r.randrange(space.n)] = Fraction(1)
        values = tuple(
            max((pi[i] for i in range(space.n) if mask >> i & 1), default=Fraction(0))
            for mask in range(full + 1)
        )
        return Capacity(space, values)
    raise DomainError(f"unknown capacity mode {mode!r}")


def additive_capacity(space: FiniteSpace, weights) -> Capacity:
    """The additive capacity with the given point weights (must sum to 1)."""
    w = [as_value(x) for x in weights]
    if len(w) != space.n:
        raise DomainError(f"need {space.n} weights, got {len(w)}")
    if sum(w) != 1:
        raise DomainError("weights must sum to 1")
    values = tuple(
        sum((w[i] for i in range(space.n) if mask >> i & 1), Fraction(0))
        for mask in range(space.full_mask + 1)
    )
    return Capacity(space, values)


def random_simple_function(space: FiniteSpace, seed=None, *,
                           rng: random.Random | None = None,
                           denominator: int = 64) -> SimpleFunction:
    r = _rng_of(seed, rng)
    return SimpleFunction(
        space,
        tuple(Fraction(r.randint(0, denominator), denominator) for _ in range(space.n)),
    )


def random_comonotone_pair(space: FiniteSpace, seed=None, *,
                           rng: random.Random | None = None,
                           denominator: int = 64) -> tuple[SimpleFunction, SimpleFunction]:
    """Two functions non-decreasing along one shared random point order.

    Sorting both value draws along the same permutation makes the pair
    comonotone by construction.
    """
    r = _rng_of(seed, rng)
    order = list(range(space.n))
    r.shuffle(order)
    fs = sorted(Fraction(r.randint(0, denominator), denominator) for _ in range(space.n))
    gs = sorted(Fraction(r.randint(0, denominator), denominator) for _ in range(space.n))
    f_vals: list[Fraction] = [Fraction(0)] * space.n
    g_vals: list[Fraction] = [Fraction(0)] * space.n
    for rank, point in enumerate(order):
        f_vals[point] = fs[rank]
        g_vals[point] = gs[rank]
    return SimpleFunction(space, tuple(f_vals)), SimpleFunction(space, tuple(g_vals))


# ---------------------------------------------------------------------------
# JSON schemas
# ---------------------------------------------------------------------------

def mask_from_key(space: FiniteSpace, key: str) -> int:
    """Parse a subset key ("a,b", any label order, "∅"/"" for empty) to a mask."""
    if key in _EMPTY_KEYS:
        return 0
    labels = [part.strip() for part in key.split(",")]
    if len(set(labels)) != len(labels):
        raise SchemaError(f"subset key {key!r} repeats a label")
    return space.mask_of(labels)


def capacity_from_json(obj, realization: Realization = EXACT) -> Capacity:
    """Parse {"points": [...], "mu": {...}, "complete": ...} into a Capacity.

    Subset keys are comma-joined labels in any order ("b,a" normalizes to
    "a,b"); the empty-set entry is optional and forced to 0.  In the exact
    realization, values must be strings, ints or Fractions -- a bare JSON
    float would smuggle in binary rounding.
    """
    if not isinstance(obj, dict):
        raise SchemaError("capacity document must be a JSON object")
    unknown = set(obj) - {"points", "mu", "complete"}
    if unknown:
        raise SchemaError(f"unknown capacity fields {sorted(unknown)}")
    points = obj.get("points")
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise SchemaError('"points" must be a list of strings')
    space = make_space(points)
    mu = obj.get("mu")
    if not isinstance(mu, dict):
        raise SchemaError('"mu" must be an object mapping subset keys to values')
    complete = obj.get("complete")
    table: dict[int, Value] = {}
    for key, val in mu.items():
        mask = mask_from_key(space, key)
        if mask in table:
            raise SchemaError(f'duplicate "mu" entries for subset {key!r}')
        try:
            table[mask] = as_value(val, realization)
        except (RealizationMismatchError, ValueError) as exc:
            raise SchemaError(f'bad value in "mu"[{key!r}]: {exc}') from exc
    if 0 in table and table[0] != 0:
        raise CapacityError("empty-set", f"mu(∅) must be 0, got {table[0]!r}", (0,))
    table.setdefault(0, 0.0 if realization == FLOAT else Fraction(0))
    return validate_capacity(space, table, complete=complete, realization=realization)


def function_from_json(obj, space: FiniteSpace, realization: Realization = EXACT) -> SimpleFunction:
    """Parse {"f": {label: value, ...}} against a known space."""
    if not isinstance(obj, dict) or set(obj) != {"f"}:
        raise SchemaError('function document must be an object with a single "f" field')
    body = obj["f"]
    if not isinstance(body, dict):
        raise SchemaError('"f" must map point labels to values')
    try:
        return simple_function(space, body, realization)
    except (RealizationMismatchError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f'bad value in "f": {exc}') from exc
