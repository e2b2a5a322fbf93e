"""Tabulated function families and the correlation predicates.

Two functions ``f``, ``g`` on a set ``X`` are *correlated* when

    (f(x) - f(y)) * (g(x) - g(y)) >= 0     for all x, y in X,

and a family is correlated when every pair in it is. No order on ``X`` is
needed. Two checkers are provided: the naive pairwise scan, O(k^2 n^2), and
a sorted scan, O(k n log n), that sorts points by the value tuple and tests
that each function is nondecreasing along the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InputError
from .measure import EXACT, MeasureSpace, Scalar, to_scalar

EVERYWHERE = "everywhere"
MU_AE = "mu_ae"
MODES = (EVERYWHERE, MU_AE)


@dataclass(frozen=True)
class FunctionFamily:
    """``k`` real functions tabulated on the points of a :class:`MeasureSpace`.

    ``table[i][j]`` is the value of function ``i`` at point ``j``.
    """

    space: MeasureSpace
    names: tuple[str, ...]
    table: tuple[tuple[Scalar, ...], ...]

    def __init__(self, space: MeasureSpace, table: Sequence[Sequence], names: Sequence[str] | None = None):
        if names is None:
            names = [f"f{i + 1}" for i in range(len(table))]
        names = tuple(str(n) for n in names)
        if len(names) != len(table):
            raise InputError(f"{len(names)} names for {len(table)} functions", field="functions")
        if len(table) < 1:
            raise InputError("a family needs at least one function", field="functions")
        if len(set(names)) != len(names):
            raise InputError("duplicate function names", field="functions")
        n = len(space.points)
        rows = []
        for i, (name, row) in enumerate(zip(names, table)):
            if len(row) != n:
                raise InputError(f"has {len(row)} values for {n} points", field=f"functions.{name}")
            rows.append(tuple(to_scalar(v, space.tier, f"functions.{name}", j) for j, v in enumerate(row)))
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "table", tuple(rows))

    @classmethod
    def from_mapping(cls, space: MeasureSpace, functions: Mapping[str, Sequence]) -> "FunctionFamily":
        return cls(space, list(functions.values()), names=list(functions.keys()))

    @property
    def k(self) -> int:
        return len(self.table)

    @property
    def n(self) -> int:
        return len(self.space.points)

    @property
    def tier(self) -> str:
        return self.space.tier

    def value_tuple(self, j: int) -> tuple[Scalar, ...]:
        """Values of all functions at point ``j``."""
        return tuple(row[j] for row in self.table)

    def subfamily(self, indices: Sequence[int]) -> "FunctionFamily":
        return FunctionFamily(self.space, [self.table[i] for i in indices], [self.names[i] for i in indices])

    def with_space(self, space: MeasureSpace, order: Sequence[int]) -> "FunctionFamily":
        return FunctionFamily(space, [[row[j] for j in order] for row in self.table], self.names)

    def permuted(self, order: Sequence[int]) -> "FunctionFamily":
        """Relabel: list points (and every table column) in ``order``."""
        return self.with_space(self.space.permuted(order), order)

    def strip_null(self) -> "FunctionFamily":
        """Drop points of zero weight.

        mu-a.e. statements about the family become everywhere statements
        about the result.
        """
        keep = self.space.positive_indices()
        sub = MeasureSpace(
            [self.space.points[j] for j in keep],
            [self.space.weights[j] for j in keep],
            tier=self.space.tier,
            degenerate=self.space.degenerate,
        )
        return self.with_space(sub, keep)

    def to_json(self) -> dict:
        from .measure import format_scalar

        return {
            **self.space.to_json(),
            "functions": {n: [format_scalar(v) for v in row] for n, row in zip(self.names, self.table)},
        }


@dataclass(frozen=True)
class Witness:
    """A violating quadruple: functions ``i``, ``j`` move in opposite strict
    directions between points ``x`` and ``y`` (0-based indices)."""

    i: int
    j: int
    x: int
    y: int
    names: tuple[str, str]
    points: tuple[str, str]

    def describe(self) -> str:
        return f"({self.names[0]}, {self.names[1]}, {self.points[0]}, {self.points[1]})"

    def to_json(self) -> dict:
        return {
            "functions": list(self.names),
            "points": list(self.points),
            "function_indices": [self.i, self.j],
            "point_indices": [self.x, self.y],
        }


@dataclass(frozen=True)
class CorrelationResult:
    correlated: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.correlated


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}; expected one of {MODES}", field="mode")
    return mode


def _support(fam: FunctionFamily, mode: str) -> list[int]:
    if _check_mode(mode) == MU_AE:
        return fam.space.positive_indices()
    return list(range(fam.n))


def _witness(fam: FunctionFamily, i: int, j: int, x: int, y: int) -> Witness:
    return Witness(i, j, x, y, (fam.names[i], fam.names[j]), (fam.space.points[x], fam.space.points[y]))


def _first_violation(fam: FunctionFamily, mode: str, sign: int) -> Witness | None:
    # Scan (i, j, x, y) lexicographically with i < j and x < y.
    pts = _support(fam, mode)
    rows = fam.table
    for i in range(fam.k):
        fi = rows[i]
        for j in range(i + 1, fam.k):
            fj = rows[j]
            for a, x in enumerate(pts):
                for y in pts[a + 1:]:
                    prod = (fi[x] - fi[y]) * (fj[x] - fj[y])
                    if prod * sign < 0:
                        return _witness(fam, i, j, x, y)
    return None


def correlated_naive(fam: FunctionFamily, mode: str = EVERYWHERE) -> CorrelationResult:
    """Pairwise check; the witness is the lexicographically first (i, j, x, y)."""
    w = _first_violation(fam, mode, +1)
    return CorrelationResult(w is None, w)


def correlated_sorted(fam: FunctionFamily, mode: str = EVERYWHERE) -> CorrelationResult:
    """Sort points by value tuple and require every function to be nondecreasing.

    On failure the witness comes from the first adjacent pair where some
    function drops: the first coordinate that differs between the two
    tuples rises, so that coordinate and the dropping one disagree. The
    witness is valid but not necessarily lexicographically first.
    """
    pts = _support(fam, mode)
    order = sorted(pts, key=fam.value_tuple)
    for p, q in zip(order, order[1:]):
        tp, tq = fam.value_tuple(p), fam.value_tuple(q)
        for i in range(fam.k):
            if tq[i] < tp[i]:
                lead = next(c for c in range(fam.k) if tq[c] != tp[c])
                x, y = min(p, q), max(p, q)
                return CorrelationResult(False, _witness(fam, lead, i, x, y))
    return CorrelationResult(True)


def is_correlated(fam: FunctionFamily, mode: str = EVERYWHERE) -> CorrelationResult:
    """Correlation test with a deterministic witness.

    The fast sorted scan decides; on failure the naive scan supplies the
    lexicographically first violating quadruple.
    """
    if correlated_sorted(fam, mode):
        return CorrelationResult(True)
    return correlated_naive(fam, mode)


def _require_pair(fam: FunctionFamily) -> None:
    if fam.k != 2:
        raise InputError(f"expected exactly 2 functions, got {fam.k}", field="functions")


def is_anticorrelated(fam: FunctionFamily, mode: str = EVERYWHERE) -> CorrelationResult:
    """``(f(x) - f(y)) * (g(x) - g(y)) <= 0`` for all point pairs."""
    _require_pair(fam)
    pts = _support(fam, mode)
    f, g = fam.table
    order = sorted(pts, key=lambda j: (f[j], -g[j]))
    if all(g[q] <= g[p] for p, q in zip(order, order[1:])):
        return CorrelationResult(True)
    w = _first_violation(fam, mode, -1)
    assert w is not None
    return CorrelationResult(False, w)


def is_constant_ae(fam: FunctionFamily, i: int) -> bool:
    """True when function ``i`` takes a single value on the positive-weight points."""
    row = fam.table[i]
    values = {row[j] for j in fam.space.positive_indices()}
    return len(values) <= 1


def family_from_columns(points: Sequence, weights: Sequence, functions: Mapping[str, Sequence], tier: str = EXACT,
                        degenerate: bool = False) -> FunctionFamily:
    """Shorthand: build the space and the family in one call."""
    return FunctionFamily.from_mapping(MeasureSpace(points, weights, tier=tier, degenerate=degenerate), functions)
