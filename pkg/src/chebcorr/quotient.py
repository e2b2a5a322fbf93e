"""Quotient of a point set by a correlated family.

Points ``x ~ y`` when every function in the family agrees on them. For a
correlated real-valued family the classes are totally ordered so that every
function is nondecreasing along the order; the weights push forward to the
classes. Integrals are unchanged by passing to the quotient, which is what
lets the inequality engine work with monotone functions on a chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InconsistencyError, InputError, NotCorrelatedError
from .family import EVERYWHERE, FunctionFamily, is_correlated
from .measure import MeasureSpace, Scalar, format_scalar, integrate, ordered_sum


@dataclass(frozen=True)
class QuotientSpace:
    """Equivalence classes of a family, listed in increasing induced order.

    ``classes[c]`` holds original point indices (ascending), ``rank[j]`` is the
    class of point ``j``, ``rep_values[i][c]`` the common value of function
    ``i`` on class ``c``.
    """

    family: FunctionFamily
    classes: tuple[tuple[int, ...], ...]
    class_weights: tuple[Scalar, ...]
    rank: tuple[int, ...]
    rep_values: tuple[tuple[Scalar, ...], ...]

    @property
    def m(self) -> int:
        return len(self.classes)

    def class_label(self, c: int) -> str:
        pts = self.family.space.points
        return "[" + ",".join(pts[j] for j in self.classes[c]) + "]"

    def as_space(self) -> MeasureSpace:
        return MeasureSpace(
            [self.class_label(c) for c in range(self.m)],
            self.class_weights,
            tier=self.family.tier,
            degenerate=self.family.space.degenerate,
        )

    def as_family(self) -> FunctionFamily:
        """The induced family of monotone functions on the quotient space."""
        return FunctionFamily(self.as_space(), self.rep_values, self.family.names)

    def to_json(self) -> dict:
        pts = self.family.space.points
        return {
            "classes": [[pts[j] for j in members] for members in self.classes],
            "weights": [format_scalar(w) for w in self.class_weights],
            "rep_values": {
                name: [format_scalar(v) for v in row]
                for name, row in zip(self.family.names, self.rep_values)
            },
            "order": list(range(self.m)),
            "rank": {pts[j]: r for j, r in enumerate(self.rank)},
        }


def build_quotient(fam: FunctionFamily) -> QuotientSpace:
    """Group points by value tuple and order the classes.

    Raises :class:`NotCorrelatedError` when the family is not correlated
    everywhere (the induced order would not be total). For families that
    are only correlated mu-a.e., quotient ``fam.strip_null()`` instead.
    """
    check = is_correlated(fam, EVERYWHERE)
    if not check:
        raise NotCorrelatedError(check.witness)
    groups: dict[tuple, list[int]] = {}
    for j in range(fam.n):
        groups.setdefault(fam.value_tuple(j), []).append(j)
    keys = sorted(groups)
    for a, b in zip(keys, keys[1:]):
        if any(vb < va for va, vb in zip(a, b)):
            raise InconsistencyError(f"lexicographic class order is not coordinatewise monotone at {a} -> {b}")
    classes = tuple(tuple(groups[key]) for key in keys)
    weights = fam.space.weights
    class_weights = tuple(ordered_sum((weights[j] for j in members), fam.tier) for members in classes)
    rank = [0] * fam.n
    for c, members in enumerate(classes):
        for j in members:
            rank[j] = c
    rep_values = tuple(tuple(key[i] for key in keys) for i in range(fam.k))
    return QuotientSpace(fam, classes, class_weights, tuple(rank), rep_values)


def lift_integral_check(fam: FunctionFamily, qs: QuotientSpace, i: int) -> tuple[Scalar, Scalar]:
    """``(integral of f_i over X, integral of its class function over X/~)``."""
    if qs.family is not fam and qs.family != fam:
        raise InputError("quotient was not built from this family", field="quotient")
    return integrate(fam.space, fam.table[i]), integrate(qs.as_space(), qs.rep_values[i])


CLOSEDNESS = ("[]", "[)", "(]", "()")


def interval(qs: QuotientSpace, lo: int | None, hi: int | None, closedness: str = "[]") -> range:
    """Class indices in the order interval between classes ``lo`` and ``hi``.

    ``None`` stands for an unbounded end (the bracket on that side is then
    irrelevant). ``closedness`` is one of ``"[]"``, ``"[)"``, ``"(]"``,
    ``"()"``. ``lo > hi`` yields an empty range.
    """
    if closedness not in CLOSEDNESS:
        raise InputError(f"closedness must be one of {CLOSEDNESS}", field="closedness")
    for name, c in (("lo", lo), ("hi", hi)):
        if c is not None and not 0 <= c < qs.m:
            raise InputError(f"class index {c} out of range 0..{qs.m - 1}", field=name)
    start = 0 if lo is None else (lo if closedness[0] == "[" else lo + 1)
    stop = qs.m if hi is None else (hi + 1 if closedness[1] == "]" else hi)
    if stop < start:
        stop = start
    return range(start, stop)


def quotient_members(qs: QuotientSpace, classes: Sequence[int]) -> list[int]:
    """Original point indices lying in the given classes."""
    return sorted(j for c in classes for j in qs.classes[c])
