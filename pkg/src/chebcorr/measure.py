"""Finite discrete measure spaces and the two-tier scalar arithmetic.

Every number flowing through the package is a *scalar* of one of two tiers:

``exact``
    :class:`fractions.Fraction`, arbitrary precision, compared exactly.
``float``
    IEEE double; sums run in ascending point index so results are
    reproducible, and comparisons go through the tolerance policy in
    :mod:`chebcorr.chebyshev`.

A space fixes the tier for everything computed on it; tiers never mix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import InputError

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"
TIERS = (EXACT, FLOAT)


def check_tier(tier: str) -> str:
    if tier not in TIERS:
        raise InputError(f"unknown tier {tier!r}; expected one of {TIERS}", field="tier")
    return tier


def to_scalar(value, tier: str = EXACT, field: str | None = None, index: int | None = None) -> Scalar:
    """Coerce ``value`` into a scalar of ``tier``.

    Strings may be integers, decimals (``"0.25"``) or ratios (``"3/8"``); in
    the exact tier decimals are read as their exact decimal value. Python
    floats are accepted in the exact tier and converted to the exact binary
    rational they denote.
    """
    if tier == EXACT and type(value) is Fraction:
        return value
    if tier == FLOAT and type(value) is float and value - value == 0:
        return value
    if isinstance(value, bool):
        raise InputError(f"boolean {value!r} is not a number", field, index)
    try:
        if tier == EXACT:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, (int, Rational)):
                return Fraction(value)
            if isinstance(value, float):
                if value != value or value in (float("inf"), float("-inf")):
                    raise InputError(f"non-finite value {value!r}", field, index)
                return Fraction(value)
            if isinstance(value, str):
                return Fraction(value.strip())
        elif tier == FLOAT:
            if isinstance(value, str):
                out = float(Fraction(value.strip()))
            elif isinstance(value, (int, float, Rational)):
                out = float(value)
            else:
                raise TypeError
            if out != out or out in (float("inf"), float("-inf")):
                raise InputError(f"non-finite value {value!r}", field, index)
            return out
        else:
            check_tier(tier)
    except (ValueError, TypeError, ZeroDivisionError, OverflowError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"cannot parse {value!r} as a number", field, index) from None
    raise InputError(f"cannot parse {value!r} as a number", field, index)


def zero(tier: str) -> Scalar:
    return Fraction(0) if tier == EXACT else 0.0


def one(tier: str) -> Scalar:
    return Fraction(1) if tier == EXACT else 1.0


def common_denominator(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Integers ``n_i`` and ``d`` with ``values[i] == n_i / d``."""
    d = 1
    for v in values:
        den = v.denominator
        if d % den:
            d = d * den // math.gcd(d, den)
    return [v.numerator * (d // v.denominator) for v in values], d


def ordered_sum(values: Iterable[Scalar], tier: str) -> Scalar:
    # Explicit left fold: builtin sum() on floats is compensated on newer Pythons.
    acc = zero(tier)
    for v in values:
        acc = acc + v
    return acc


def ordered_product(values: Iterable[Scalar], tier: str) -> Scalar:
    acc = one(tier)
    for v in values:
        acc = acc * v
    return acc


@dataclass(frozen=True)
class MeasureSpace:
    """A finite set of labelled points with nonnegative weights.

    The sigma-algebra is the power set of ``points``. Labels are opaque: no
    order on them is used anywhere. Zero weights are allowed and model null
    sets. A space whose weights are all zero (or that has no points) must be
    built with ``degenerate=True``.
    """

    points: tuple[str, ...]
    weights: tuple[Scalar, ...]
    tier: str = EXACT
    degenerate: bool = False
    total_mass: Scalar = field(init=False, repr=False, compare=False)
    _positive: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __init__(self, points: Sequence, weights: Sequence, tier: str = EXACT, degenerate: bool = False):
        check_tier(tier)
        labels = tuple(str(p) for p in points)
        if len(labels) != len(weights):
            raise InputError(
                f"{len(labels)} points but {len(weights)} weights", field="weights"
            )
        seen = set()
        for i, label in enumerate(labels):
            if label in seen:
                raise InputError(f"duplicate point label {label!r}", field="points", index=i)
            seen.add(label)
        ws = tuple(to_scalar(w, tier, "weights", i) for i, w in enumerate(weights))
        for i, w in enumerate(ws):
            if w < 0:
                raise InputError(f"negative weight {w}", field="weights", index=i)
        if not degenerate and not any(w > 0 for w in ws):
            raise InputError("no point has positive weight (pass degenerate=True to allow)", field="weights")
        object.__setattr__(self, "points", labels)
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "tier", tier)
        object.__setattr__(self, "degenerate", degenerate)
        object.__setattr__(self, "total_mass", ordered_sum(ws, tier))
        object.__setattr__(self, "_positive", tuple(i for i, w in enumerate(ws) if w > 0))

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def uniform(cls, n: int, tier: str = EXACT, prefix: str = "x") -> "MeasureSpace":
        return cls([f"{prefix}{i}" for i in range(n)], [1] * n, tier=tier, degenerate=n == 0)

    def positive_indices(self) -> list[int]:
        """Indices of points of positive weight, ascending."""
        return list(self._positive)

    def index_of(self, label: str) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise InputError(f"no point labelled {label!r}", field="points") from None

    def permuted(self, order: Sequence[int]) -> "MeasureSpace":
        """The same space with points listed in ``order``."""
        return MeasureSpace(
            [self.points[i] for i in order],
            [self.weights[i] for i in order],
            tier=self.tier,
            degenerate=self.degenerate,
        )

    def to_json(self) -> dict:
        return {"points": list(self.points), "weights": [format_scalar(w) for w in self.weights]}


def total_mass(space: MeasureSpace) -> Scalar:
    return space.total_mass


def integrate(space: MeasureSpace, f: Sequence) -> Scalar:
    """Sum of ``f(x) * mu({x})`` over the points of ``space``, in index order."""
    if len(f) != len(space.points):
        raise InputError(f"function has {len(f)} values for {len(space.points)} points", field="function")
    tier = space.tier
    values = [to_scalar(v, tier, "function", i) for i, v in enumerate(f)]
    if tier == EXACT:
        # Integer accumulation over common denominators; same rational, far fewer gcds.
        nums, dv = common_denominator(values)
        ws, dw = common_denominator(space.weights)
        return Fraction(sum(a * b for a, b in zip(nums, ws)), dv * dw)
    return ordered_sum((v * w for v, w in zip(values, space.weights)), tier)


def format_scalar(x: Scalar):
    """JSON form of a scalar: ``"p/q"`` (or ``"p"``) for rationals, a number for floats."""
    if isinstance(x, Fraction):
        return str(x)
    return float(x)
