"""Chebyshev-type inequalities for correlated families on finite spaces.

For a correlated pair ``f, g`` on a space of total mass ``M``::

    M * ∫fg  >=  ∫f * ∫g

and the difference equals half the double integral of the increment
product ``(f(x)-f(y))(g(x)-g(y))``. For ``k`` nonnegative correlated
functions::

    M^(k-1) * ∫ f_1 ... f_k  >=  ∫f_1 * ... * ∫f_k.

Equality (with all integrals positive) happens exactly when at least
``k - 1`` of the functions are constant on the positive-weight points.

Float-tier comparisons use a relative tolerance: a gap counts as zero when
``|gap| <= rel_tol * (|lhs| + |rhs| + eps)``.
"""

from __future__ import annotations

import enum
import sys
from fractions import Fraction
from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import InconsistencyError, InputError
from .family import (
    MU_AE,
    FunctionFamily,
    is_anticorrelated,
    is_constant_ae,
    is_correlated,
)
from .measure import (
    EXACT,
    MeasureSpace,
    Scalar,
    common_denominator,
    format_scalar,
    integrate,
    ordered_product,
    ordered_sum,
    to_scalar,
)

DEFAULT_REL_TOL = 1e-9
SIGNED_CAVEAT = (
    "signed functions with k > 2: correlation alone does not imply the inequality; "
    "the verdict only reports the sign of the computed gap"
)
NOT_CORRELATED_CAVEAT = "family is not mu-a.e. correlated; the inequality is not guaranteed"
NOT_ANTICORRELATED_CAVEAT = "pair is not mu-a.e. anticorrelated; the reverse inequality is not guaranteed"
FLOAT_MASK_CAVEAT = "float tolerance absorbs a gap that constancy predicts to be strict"


class Verdict(str, enum.Enum):
    HOLDS = "Holds"
    EQUALITY = "HoldsWithEquality"
    VIOLATED = "Violated"


class EqualityClass(str, enum.Enum):
    CONSTANT = "AtLeastKMinus1Constant"
    INTEGRAL_ZERO = "SomeIntegralZero"
    STRICT = "NonDegenerateStrict"
    NOT_APPLICABLE = "NotApplicable"


GEQ = "geq"
LEQ = "leq"


@dataclass(frozen=True)
class InequalityReport:
    """One evaluated inequality ``lhs (>= or <=) rhs``; ``gap = lhs - rhs``.

    ``direction`` is ``"geq"`` for the correlated inequalities and ``"leq"``
    for the anticorrelated reverse one. ``hypotheses_met`` says whether the
    family satisfies the assumptions under which the inequality is a theorem.
    """

    kind: str
    tier: str
    lhs: Scalar
    rhs: Scalar
    gap: Scalar
    verdict: Verdict
    equality_class: EqualityClass
    direction: str = GEQ
    hypotheses_met: bool = True
    witnesses: dict | None = None
    caveats: tuple[str, ...] = ()
    integrals: tuple[Scalar, ...] = ()
    rel_tol: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.VIOLATED

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "tier": self.tier,
            "direction": self.direction,
            "lhs": format_scalar(self.lhs),
            "rhs": format_scalar(self.rhs),
            "gap": format_scalar(self.gap),
            "verdict": self.verdict.value,
            "equality_class": self.equality_class.value,
            "hypotheses_met": self.hypotheses_met,
            "integrals": [format_scalar(v) for v in self.integrals],
            "witnesses": self.witnesses,
            "caveats": list(self.caveats),
        }
        for key, value in self.extra.items():
            out[key] = format_scalar(value) if isinstance(value, (Fraction, float)) else value
        return out


def gap_sign(gap: Scalar, lhs: Scalar, rhs: Scalar, tier: str, rel_tol: float | None = None) -> int:
    """-1, 0 or +1; exact in the exact tier, tolerance-based in the float tier."""
    if tier == EXACT:
        return (gap > 0) - (gap < 0)
    tol = DEFAULT_REL_TOL if rel_tol is None else rel_tol
    scale = abs(lhs) + abs(rhs) + sys.float_info.epsilon
    if abs(gap) <= tol * scale:
        return 0
    return 1 if gap > 0 else -1


def _verdict(sign: int, direction: str) -> Verdict:
    if sign == 0:
        return Verdict.EQUALITY
    if (sign > 0) == (direction == GEQ):
        return Verdict.HOLDS
    return Verdict.VIOLATED


def _pointwise_product(fam: FunctionFamily, rows: Sequence[int] | None = None) -> list[Scalar]:
    rows = range(fam.k) if rows is None else rows
    return [ordered_product((fam.table[i][j] for i in rows), fam.tier) for j in range(fam.n)]


def _require_k(fam: FunctionFamily, exact: int | None = None, minimum: int | None = None) -> None:
    if exact is not None and fam.k != exact:
        raise InputError(f"expected exactly {exact} functions, got {fam.k}", field="functions")
    if minimum is not None and fam.k < minimum:
        raise InputError(f"expected at least {minimum} functions, got {fam.k}", field="functions")


def _strictness_witness(fam: FunctionFamily, a: int, b: int, sign: int = 1) -> dict | None:
    """Two positive-weight points between which functions ``a`` and ``b`` both move strictly.

    For correlated families the extreme points of the sorted order work;
    with ``sign=-1`` ``b`` moves the other way (anticorrelated case).
    """
    f, g = fam.table[a], fam.table[b]
    pts = fam.space.positive_indices()
    if not pts:
        return None
    order = sorted(pts, key=lambda j: (f[j], sign * g[j]))
    lo, hi = order[0], order[-1]
    if f[hi] > f[lo] and sign * (g[hi] - g[lo]) > 0:
        return {
            "functions": [fam.names[a], fam.names[b]],
            "low_point": fam.space.points[lo],
            "high_point": fam.space.points[hi],
        }
    return None


def _classify(fam: FunctionFamily, report: InequalityReport,
              related: bool | None = None) -> tuple[EqualityClass, dict | None, tuple[str, ...]]:
    """Equality class plus strictness witness; cross-checks both sides of the iff.

    ``related`` short-circuits the (anti)correlation test when the caller
    already ran it.
    """
    tier = fam.tier
    sign = gap_sign(report.gap, report.lhs, report.rhs, tier, report.rel_tol)
    pair_like = report.kind in ("covariance", "anticorrelated")

    corr_sign = -1 if report.kind == "anticorrelated" else 1
    if related is None:
        test = is_anticorrelated if corr_sign < 0 else is_correlated
        related = bool(test(fam, MU_AE))
    if not related:
        return EqualityClass.NOT_APPLICABLE, None, ()

    if not pair_like:
        if not _is_nonneg_ae(fam):
            # Signed pairs still fall under the two-function equality case.
            if fam.k > 2:
                return EqualityClass.NOT_APPLICABLE, None, ()
        elif any(v == 0 for v in report.integrals):
            if sign != 0:
                _disagree(tier, "an integral vanishes but the gap is nonzero", report)
            return EqualityClass.INTEGRAL_ZERO, None, ()

    nonconstant = [i for i in range(fam.k) if not is_constant_ae(fam, i)]
    constant_side = len(nonconstant) <= 1
    gap_side = sign == 0
    caveats: tuple[str, ...] = ()
    if constant_side != gap_side:
        if tier == EXACT or constant_side:
            _disagree(tier, f"constancy says equality={constant_side} but the gap says {gap_side}", report)
        caveats = (FLOAT_MASK_CAVEAT,)
    if constant_side:
        return EqualityClass.CONSTANT, None, caveats
    witness = _strictness_witness(fam, nonconstant[0], nonconstant[1], corr_sign)
    if witness is None:
        _disagree(tier, "two nonconstant correlated functions without a strictness witness", report)
    return EqualityClass.STRICT, witness, caveats


def _disagree(tier: str, message: str, report: InequalityReport) -> None:
    raise InconsistencyError(f"{report.kind} ({tier} tier): {message}; gap={report.gap}")


def classify_equality(fam: FunctionFamily, report: InequalityReport) -> EqualityClass:
    """Decide the equality case of ``report`` and verify it two ways.

    When the hypotheses hold, "gap is zero" and "at least k-1 functions are
    constant a.e." are evaluated independently; disagreement raises
    :class:`InconsistencyError`. Unmet hypotheses give ``NotApplicable``.
    """
    return _classify(fam, report)[0]


def _finish(fam: FunctionFamily, report: InequalityReport, hypotheses_met: bool, extra_caveats=()) -> InequalityReport:
    if hypotheses_met:
        cls, witness, caveats = _classify(fam, report, related=True)
    else:
        cls, witness, caveats = EqualityClass.NOT_APPLICABLE, None, ()
    return replace(report, equality_class=cls, witnesses=witness, caveats=tuple(extra_caveats) + caveats,
                   hypotheses_met=hypotheses_met)


def _report(kind: str, fam: FunctionFamily, lhs: Scalar, rhs: Scalar, integrals, direction: str = GEQ,
            rel_tol: float | None = None) -> InequalityReport:
    gap = lhs - rhs
    sign = gap_sign(gap, lhs, rhs, fam.tier, rel_tol)
    return InequalityReport(
        kind=kind,
        tier=fam.tier,
        lhs=lhs,
        rhs=rhs,
        gap=gap,
        verdict=_verdict(sign, direction),
        equality_class=EqualityClass.NOT_APPLICABLE,
        direction=direction,
        integrals=tuple(integrals),
        rel_tol=rel_tol,
    )


def covariance_gap(fam: FunctionFamily, rel_tol: float | None = None) -> InequalityReport:
    """``M * ∫fg`` against ``∫f * ∫g`` for a pair.

    The gap is reported whether or not the pair is correlated;
    ``hypotheses_met`` records whether it is (mu-a.e.).
    """
    _require_k(fam, exact=2)
    space = fam.space
    intf, intg = integrate(space, fam.table[0]), integrate(space, fam.table[1])
    lhs = space.total_mass * integrate(space, _pointwise_product(fam))
    report = _report("covariance", fam, lhs, intf * intg, (intf, intg), rel_tol=rel_tol)
    met = bool(is_correlated(fam, MU_AE))
    return _finish(fam, report, met, () if met else (NOT_CORRELATED_CAVEAT,))


def covariance_identity(fam: FunctionFamily) -> tuple[Scalar, Scalar]:
    """The covariance gap computed directly and as a double sum over point pairs.

    Second component: ``sum over x > y of (f(x)-f(y)) (g(x)-g(y)) w_x w_y``,
    outer index ascending. The two agree for every pair, correlated or not.
    """
    _require_k(fam, exact=2)
    space = fam.space
    f, g = fam.table
    w = space.weights
    direct = space.total_mass * integrate(space, _pointwise_product(fam)) - integrate(space, f) * integrate(space, g)
    if fam.tier == EXACT:
        (fi, df), (gi, dg), (wi, dw) = common_denominator(f), common_denominator(g), common_denominator(w)
        total = sum((fi[x] - fi[y]) * (gi[x] - gi[y]) * wi[x] * wi[y] for x in range(fam.n) for y in range(x))
        return direct, Fraction(total, df * dg * dw * dw)
    terms = ((f[x] - f[y]) * (g[x] - g[y]) * w[x] * w[y] for x in range(fam.n) for y in range(x))
    return direct, ordered_sum(terms, fam.tier)


def _check_nonneg(fam: FunctionFamily) -> None:
    for i, row in enumerate(fam.table):
        for j in fam.space.positive_indices():
            if row[j] < 0:
                raise InputError(
                    f"negative value {row[j]} at point {fam.space.points[j]!r}",
                    field=f"functions.{fam.names[i]}",
                    index=j,
                )


def _is_nonneg_ae(fam: FunctionFamily) -> bool:
    pos = fam.space.positive_indices()
    return all(row[j] >= 0 for row in fam.table for j in pos)


def product_inequality(fam: FunctionFamily, require_nonneg: bool = True, rel_tol: float | None = None,
                       kind: str = "product") -> InequalityReport:
    """``M^(k-1) * ∫ prod f_i`` against ``prod ∫ f_i``.

    The integrand is multiplied out pointwise before integrating. With
    ``require_nonneg=False`` signed inputs are accepted; for ``k > 2`` the
    report then carries a caveat and ``hypotheses_met=False``.
    """
    _require_k(fam, minimum=2)
    if require_nonneg:
        _check_nonneg(fam)
    space = fam.space
    integrals = [integrate(space, row) for row in fam.table]
    lhs = space.total_mass ** (fam.k - 1) * integrate(space, _pointwise_product(fam))
    report = _report(kind, fam, lhs, ordered_product(integrals, fam.tier), integrals, rel_tol=rel_tol)
    caveats = []
    met = True
    if not is_correlated(fam, MU_AE):
        met = False
        caveats.append(NOT_CORRELATED_CAVEAT)
    if fam.k > 2 and not _is_nonneg_ae(fam):
        met = False
        caveats.append(SIGNED_CAVEAT)
    return _finish(fam, report, met, caveats)


def anticorrelated_upper_bound(fam: FunctionFamily, rel_tol: float | None = None) -> InequalityReport:
    """Reverse inequality ``M * ∫fg <= ∫f * ∫g`` for an anticorrelated pair.

    ``gap`` keeps the orientation ``M∫fg - ∫f∫g``; the inequality holds when
    it is ``<= 0``.
    """
    _require_k(fam, exact=2)
    space = fam.space
    intf, intg = integrate(space, fam.table[0]), integrate(space, fam.table[1])
    lhs = space.total_mass * integrate(space, _pointwise_product(fam))
    report = _report("anticorrelated", fam, lhs, intf * intg, (intf, intg), direction=LEQ, rel_tol=rel_tol)
    met = bool(is_anticorrelated(fam, MU_AE))
    return _finish(fam, report, met, () if met else (NOT_ANTICORRELATED_CAVEAT,))


def sequence_lemma(
    seqs: Sequence[Sequence],
    weights: Sequence,
    truncate: int | None = None,
    tail_mass=None,
    value_bound=None,
    infinite: bool = False,
    tier: str = EXACT,
    names: Sequence[str] | None = None,
    rel_tol: float | None = None,
) -> InequalityReport:
    """Product inequality for ``k`` nonnegative nondecreasing sequences.

    Only the first ``truncate`` terms (default: all supplied) are summed.
    If ``tail_mass`` (an upper bound on the weight beyond the prefix) and
    ``value_bound`` (a bound on every sequence value) are given, the report
    also carries a certified bracket ``[gap_lower_bound, gap_upper_bound]``
    on the gap of the infinite sums. ``infinite=True`` makes that
    certificate mandatory.
    """
    if len(seqs) < 2:
        raise InputError(f"expected at least 2 sequences, got {len(seqs)}", field="sequences")
    n = len(weights) if truncate is None else truncate
    if n < 1:
        raise InputError("truncation must keep at least one term", field="truncate")
    if n > len(weights):
        raise InputError(f"truncation {n} exceeds the {len(weights)} supplied weights", field="weights")
    names = [f"x{j + 1}" for j in range(len(seqs))] if names is None else list(names)
    w = [to_scalar(v, tier, "weights", i) for i, v in enumerate(weights[:n])]
    for i, v in enumerate(w):
        if v <= 0:
            raise InputError(f"weight {v} is not strictly positive", field="weights", index=i)
    prefix = []
    for name, s in zip(names, seqs):
        if len(s) < n:
            raise InputError(f"has {len(s)} terms, truncation needs {n}", field=f"sequences.{name}")
        vals = [to_scalar(v, tier, f"sequences.{name}", i) for i, v in enumerate(s[:n])]
        for i, v in enumerate(vals):
            if v < 0:
                raise InputError(f"negative term {v}", field=f"sequences.{name}", index=i)
            if i and v < vals[i - 1]:
                raise InputError(f"sequence decreases ({vals[i - 1]} -> {v})", field=f"sequences.{name}", index=i)
        prefix.append(vals)

    if infinite and (tail_mass is None or value_bound is None):
        raise InputError("an infinite sequence needs both tail_mass and value_bound", field="tail_mass")

    space = MeasureSpace([str(i) for i in range(n)], w, tier=tier)
    fam = FunctionFamily(space, prefix, names)
    report = product_inequality(fam, require_nonneg=True, rel_tol=rel_tol, kind="sequence")
    extra: dict = {"truncation": n}
    if tail_mass is not None and value_bound is not None:
        eps = to_scalar(tail_mass, tier, "tail_mass")
        bound = to_scalar(value_bound, tier, "value_bound")
        if eps < 0:
            raise InputError("tail mass must be nonnegative", field="tail_mass")
        for name, vals in zip(names, prefix):
            if vals[-1] > bound:
                raise InputError(f"value bound {bound} is below a prefix term {vals[-1]}", field=f"sequences.{name}")
        lower, upper = _tail_bracket(fam, report, eps, bound)
        extra.update(tail_mass=eps, value_bound=bound, gap_lower_bound=lower, gap_upper_bound=upper)
    return replace(report, extra=extra)


def _tail_bracket(fam: FunctionFamily, report: InequalityReport, eps: Scalar, bound: Scalar) -> tuple[Scalar, Scalar]:
    # Each tail term lies in [0, eps * bound^(...)]; every quantity is monotone in the tail.
    k, tier = fam.k, fam.tier
    mass = fam.space.total_mass
    prod_integral = integrate(fam.space, _pointwise_product(fam))
    integrals = report.integrals
    lower = mass ** (k - 1) * prod_integral - ordered_product((s + bound * eps for s in integrals), tier)
    upper = (mass + eps) ** (k - 1) * (prod_integral + bound ** k * eps) - ordered_product(integrals, tier)
    return lower, upper


def truncated_family(fam: FunctionFamily, level) -> FunctionFamily:
    """The family ``min(f_i, level)``."""
    cap = to_scalar(level, fam.tier, "level")
    return FunctionFamily(fam.space, [[min(v, cap) for v in row] for row in fam.table], fam.names)
