"""Two uses of the correlation inequality.

Power series
    For ``f(z) = sum_{n>=1} a_n z^n`` with ``a_n >= 0`` and ``rho^n a_n``
    monotone, the function ``(rho - z) f(z) / z`` moves opposite to
    ``rho^n a_n`` on ``(0, rho)``. We evaluate it on a grid with certified
    tail brackets, together with the variant ``(rho - z) f(z)`` that lacks
    the ``1/z`` factor. That variant fails already for ``a_n = 1``, where it
    equals ``z``.

Win probabilities
    For independent ``X_0, ..., X_k``, integrating the survival functions
    ``P(X_i >= t)`` against the law of ``X_0`` gives
    ``P(all X_i >= X_0) >= prod P(X_i >= X_0)``, and likewise with ``<=``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .chebyshev import InequalityReport, product_inequality
from .errors import InputError
from .family import FunctionFamily
from .measure import (
    EXACT,
    FLOAT,
    MeasureSpace,
    Scalar,
    check_tier,
    format_scalar,
    integrate,
    ordered_product,
    ordered_sum,
    to_scalar,
)

# ---------------------------------------------------------------------------
# power series

NONINCREASING = "nonincreasing"
NONDECREASING = "nondecreasing"
CONSTANT = "constant"

STRICTLY_DECREASING = "strictly_decreasing"
STRICTLY_INCREASING = "strictly_increasing"
UNDETERMINED = "undetermined"


def builtin_coefficients(name: str) -> Callable[[int], Fraction]:
    """Named coefficient generators ``n -> a_n`` (``n >= 1``).

    ``ones``: a_n = 1. ``unit``: a_1 = 1, the rest 0. ``geometric:r``:
    a_n = r^n for a rational ``r >= 0``.
    """
    if name == "ones":
        return lambda n: Fraction(1)
    if name == "unit":
        return lambda n: Fraction(1 if n == 1 else 0)
    if name.startswith("geometric:"):
        r = to_scalar(name.split(":", 1)[1], EXACT, "generator")
        if r < 0:
            raise InputError("geometric ratio must be nonnegative", field="generator")
        return lambda n: r ** n
    raise InputError(f"unknown coefficient generator {name!r}", field="generator")


@dataclass(frozen=True)
class PowerSeriesSpec:
    """Nonnegative coefficients ``a_1, a_2, ...`` and the scale ``rho``.

    ``coeffs`` is a finite list (``coeffs[0]`` is ``a_1``) or a callable
    ``n -> a_n``. ``truncation`` terms are summed; the rest is bracketed by
    a geometric tail using the last retained ``rho^n a_n`` and, for
    increasing coefficients, ``tail_sup`` (a bound on ``rho^n a_n`` beyond
    the prefix, if known).
    """

    coeffs: Sequence | Callable[[int], Scalar]
    rho: Scalar
    truncation: int = 64
    tail_sup: Scalar | None = None
    tier: str = EXACT

    def coefficient_prefix(self) -> list[Scalar]:
        n = self.truncation
        if n < 1:
            raise InputError("truncation must be at least 1", field="truncate")
        if callable(self.coeffs):
            raw = [self.coeffs(i) for i in range(1, n + 1)]
        else:
            if len(self.coeffs) < n:
                raise InputError(f"{len(self.coeffs)} coefficients given, truncation needs {n}", field="coeffs")
            raw = list(self.coeffs[:n])
        out = [to_scalar(a, self.tier, "coeffs", i) for i, a in enumerate(raw)]
        for i, a in enumerate(out):
            if a < 0:
                raise InputError(f"negative coefficient {a}", field="coeffs", index=i)
        return out


@dataclass(frozen=True)
class Bracket:
    lo: Scalar
    hi: Scalar

    @property
    def mid(self) -> Scalar:
        if self.hi == math.inf:
            return math.inf
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Scalar:
        return self.hi - self.lo

    def to_json(self) -> list:
        return [format_scalar(self.lo), format_scalar(self.hi) if self.hi != math.inf else "inf"]


@dataclass(frozen=True)
class SeriesMonotonicityReport:
    direction: str
    grid: tuple[Scalar, ...]
    g_paper: tuple[Bracket, ...]
    g_corrected: tuple[Bracket, ...]
    literal_verdict: str
    corrected_verdict: str
    literal_predicted: str
    corrected_predicted: str

    @property
    def literal_matches(self) -> bool:
        return _matches(self.literal_verdict, self.literal_predicted)

    @property
    def corrected_matches(self) -> bool:
        return _matches(self.corrected_verdict, self.corrected_predicted)

    def to_json(self) -> dict:
        return {
            "coefficient_direction": self.direction,
            "grid": [format_scalar(z) for z in self.grid],
            "g_corrected": {
                "brackets": [b.to_json() for b in self.g_corrected],
                "verdict": self.corrected_verdict,
                "predicted": self.corrected_predicted,
                "matches": self.corrected_matches,
            },
            "g_paper": {
                "brackets": [b.to_json() for b in self.g_paper],
                "verdict": self.literal_verdict,
                "predicted": self.literal_predicted,
                "matches": self.literal_matches,
            },
        }


def _matches(verdict: str, predicted: str) -> bool:
    if predicted == NONINCREASING:
        return verdict in (STRICTLY_DECREASING, CONSTANT)
    return verdict == predicted


def sequence_direction(values: Sequence[Scalar]) -> str:
    """Direction of a monotone sequence; raises with the first offending index otherwise."""
    up = down = False
    for i in range(1, len(values)):
        if values[i] > values[i - 1]:
            up = True
        elif values[i] < values[i - 1]:
            down = True
        if up and down:
            raise InputError("rho^n a_n is not monotone", field="coeffs", index=i)
    if up:
        return NONDECREASING
    if down:
        return NONINCREASING
    return CONSTANT


def _tail_bracket(spec: PowerSeriesSpec, scaled: list[Scalar], direction: str, z: Scalar) -> Bracket:
    # Tail sum_{n>N} b_n q^n with q = z/rho, b_n = rho^n a_n monotone.
    n = len(scaled)
    q = z / spec.rho
    if z == 0:
        return Bracket(0 * q, 0 * q)
    geo = q ** (n + 1) / (1 - q)
    last = scaled[-1]
    if direction == NONDECREASING:
        sup = spec.tail_sup
        hi = math.inf if sup is None else to_scalar(sup, spec.tier, "tail_sup") * geo
        return Bracket(last * geo, hi)
    return Bracket(0 * geo, last * geo)


def _monotone_verdict(brackets: Sequence[Bracket]) -> str:
    if any(b.hi == math.inf for b in brackets):
        return UNDETERMINED
    pairs = list(zip(brackets, brackets[1:]))
    if pairs and all(b.hi < a.lo for a, b in pairs):
        return STRICTLY_DECREASING
    if pairs and all(b.lo > a.hi for a, b in pairs):
        return STRICTLY_INCREASING
    if max(b.lo for b in brackets) <= min(b.hi for b in brackets):
        return CONSTANT
    return UNDETERMINED


def series_monotonicity(spec: PowerSeriesSpec, grid: Sequence) -> SeriesMonotonicityReport:
    """Evaluate ``(rho - z) f(z) / z`` and ``(rho - z) f(z)`` on ``grid``.

    Each value is an interval: truncated sum plus the tail bracket. A grid
    is certified strictly monotone only when consecutive intervals are
    disjoint, and "constant" when all intervals share a point. At ``z = 0``
    the first function takes its limit ``rho * a_1``.
    """
    tier = check_tier(spec.tier)
    rho = to_scalar(spec.rho, tier, "rho")
    if rho <= 0:
        raise InputError("rho must be positive", field="rho")
    spec = PowerSeriesSpec(spec.coeffs, rho, spec.truncation, spec.tail_sup, tier)
    zs = [to_scalar(z, tier, "grid", i) for i, z in enumerate(grid)]
    if not zs:
        raise InputError("grid is empty", field="grid")
    for i, z in enumerate(zs):
        if not 0 <= z < rho:
            raise InputError(f"z={z} outside [0, rho)", field="grid", index=i)
        if i and z <= zs[i - 1]:
            raise InputError("grid must be strictly increasing", field="grid", index=i)
    coeffs = spec.coefficient_prefix()
    scaled = [a * rho ** (i + 1) for i, a in enumerate(coeffs)]
    direction = sequence_direction(scaled)

    literal, corrected = [], []
    for z in zs:
        partial = ordered_sum((a * z ** (i + 1) for i, a in enumerate(coeffs)), tier)
        tail = _tail_bracket(spec, scaled, direction, z)
        f_lo, f_hi = partial + tail.lo, partial + tail.hi
        literal.append(Bracket((rho - z) * f_lo, (rho - z) * f_hi))
        if z == 0:
            limit = rho * coeffs[0]
            corrected.append(Bracket(limit, limit))
        else:
            corrected.append(Bracket((rho - z) * f_lo / z, (rho - z) * f_hi / z))

    strict = {NONINCREASING: STRICTLY_DECREASING, NONDECREASING: STRICTLY_INCREASING}
    return SeriesMonotonicityReport(
        direction=direction,
        grid=tuple(zs),
        g_paper=tuple(literal),
        g_corrected=tuple(corrected),
        literal_verdict=_monotone_verdict(literal),
        corrected_verdict=_monotone_verdict(corrected),
        literal_predicted=NONINCREASING if direction == CONSTANT else strict[direction],
        corrected_predicted=CONSTANT if direction == CONSTANT else strict[direction],
    )


def series_family(spec: PowerSeriesSpec, z, gamma) -> FunctionFamily:
    """The two-function instance behind the power-series bound, truncated.

    Points ``n = 1..N`` with weights ``(gamma/rho)^n``, functions
    ``a_n rho^n`` and ``(z/gamma)^n``; for ``0 <= z < gamma < rho`` they
    are correlated (anticorrelated) when ``rho^n a_n`` is nonincreasing
    (nondecreasing).
    """
    tier = spec.tier
    rho = to_scalar(spec.rho, tier, "rho")
    z = to_scalar(z, tier, "z")
    gamma = to_scalar(gamma, tier, "gamma")
    if not 0 <= z < gamma < rho:
        raise InputError("need 0 <= z < gamma < rho", field="gamma")
    coeffs = spec.coefficient_prefix()
    n = len(coeffs)
    space = MeasureSpace([str(i) for i in range(1, n + 1)], [(gamma / rho) ** i for i in range(1, n + 1)], tier=tier)
    return FunctionFamily(
        space,
        [[a * rho ** (i + 1) for i, a in enumerate(coeffs)], [(z / gamma) ** i for i in range(1, n + 1)]],
        ["a_n*rho^n", "(z/gamma)^n"],
    )


# ---------------------------------------------------------------------------
# win probabilities

GEQ = "geq"
LEQ = "leq"
FLOAT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class DiscreteDistribution:
    """Finitely supported law: ``P(X = support[j]) = probs[j]``."""

    support: tuple[Scalar, ...]
    probs: tuple[Scalar, ...]
    tier: str = EXACT

    def __init__(self, support: Sequence, probs: Sequence, tier: str = EXACT, name: str = "distribution"):
        check_tier(tier)
        if len(support) != len(probs):
            raise InputError(f"{len(support)} support points but {len(probs)} probabilities", field=f"{name}.probs")
        if not support:
            raise InputError("empty support", field=f"{name}.support")
        sup = tuple(to_scalar(s, tier, f"{name}.support", i) for i, s in enumerate(support))
        ps = tuple(to_scalar(p, tier, f"{name}.probs", i) for i, p in enumerate(probs))
        for i, p in enumerate(ps):
            if p < 0:
                raise InputError(f"negative probability {p}", field=f"{name}.probs", index=i)
        total = ordered_sum(ps, tier)
        if (tier == EXACT and total != 1) or (tier == FLOAT and abs(total - 1) > FLOAT_SUM_TOL):
            raise InputError(f"probabilities sum to {total}, not 1", field=f"{name}.probs")
        object.__setattr__(self, "support", sup)
        object.__setattr__(self, "probs", ps)
        object.__setattr__(self, "tier", tier)

    @classmethod
    def uniform(cls, support: Sequence, tier: str = EXACT) -> "DiscreteDistribution":
        n = len(support)
        return cls(support, [Fraction(1, n)] * n, tier=tier)

    def survival(self, t: Scalar, direction: str = GEQ) -> Scalar:
        """``P(X >= t)`` (``geq``) or ``P(X <= t)`` (``leq``)."""
        if direction == GEQ:
            terms = (p for s, p in zip(self.support, self.probs) if s >= t)
        else:
            terms = (p for s, p in zip(self.support, self.probs) if s <= t)
        return ordered_sum(terms, self.tier)

    def sampler(self) -> Callable[[np.random.Generator, int], np.ndarray]:
        values = np.array([float(s) for s in self.support])
        p = np.array([float(q) for q in self.probs])
        p = p / p.sum()
        return lambda rng, size: rng.choice(values, size=size, p=p)

    def to_json(self) -> dict:
        return {"support": [format_scalar(s) for s in self.support], "probs": [format_scalar(p) for p in self.probs]}


def _check_direction(direction: str) -> str:
    if direction not in (GEQ, LEQ):
        raise InputError(f"direction must be {GEQ!r} or {LEQ!r}", field="direction")
    return direction


@dataclass(frozen=True)
class WinProbabilityReport:
    direction: str
    marginals: tuple[Scalar, ...]
    joint: Scalar
    product_bound: Scalar
    gap: Scalar
    holds: bool
    inequality: InequalityReport | None = None
    monte_carlo: "MonteCarloEstimate | None" = None

    def to_json(self) -> dict:
        out = {
            "direction": self.direction,
            "marginals": [format_scalar(m) for m in self.marginals],
            "joint": format_scalar(self.joint),
            "product_bound": format_scalar(self.product_bound),
            "gap": format_scalar(self.gap),
            "holds": self.holds,
        }
        if self.inequality is not None:
            out["inequality"] = self.inequality.to_json()
        if self.monte_carlo is not None:
            out["monte_carlo"] = self.monte_carlo.to_json()
        return out


def survival_family(x0: DiscreteDistribution, competitors: Sequence[DiscreteDistribution],
                    direction: str = GEQ) -> FunctionFamily:
    """``t -> P(X_i >= t)`` (or ``<= t``) tabulated on the support of ``X_0``, weighted by its law."""
    tier = x0.tier
    space = MeasureSpace([f"t{j}" for j in range(len(x0.support))], x0.probs, tier=tier)
    table = [[c.survival(t, direction) for t in x0.support] for c in competitors]
    return FunctionFamily(space, table, [f"X{i + 1}" for i in range(len(competitors))])


def win_probability_bounds(x0: DiscreteDistribution, competitors: Sequence[DiscreteDistribution],
                           direction: str = GEQ) -> WinProbabilityReport:
    """Joint probability ``P(all X_i >= X_0)`` against ``prod P(X_i >= X_0)``.

    Both sides are integrals against the law of ``X_0``; see the module
    docstring. With ``direction="leq"`` every ``>=`` becomes ``<=``.
    """
    _check_direction(direction)
    tier = x0.tier
    for i, c in enumerate(competitors):
        if c.tier != tier:
            raise InputError("all distributions must share one tier", field="competitors", index=i)
    if not competitors:
        one = to_scalar(1, tier)
        return WinProbabilityReport(direction, (), one, one, one - one, True)
    fam = survival_family(x0, competitors, direction)
    space = fam.space
    marginals = tuple(integrate(space, row) for row in fam.table)
    joint = integrate(space, [ordered_product(fam.value_tuple(j), tier) for j in range(fam.n)])
    bound = ordered_product(marginals, tier)
    inequality = product_inequality(fam) if fam.k >= 2 else None
    if inequality is not None:
        holds = inequality.ok
    else:
        holds = joint >= bound
    return WinProbabilityReport(direction, marginals, joint, bound, joint - bound, holds, inequality)


@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: float
    lower: float
    upper: float
    n_samples: int
    successes: int
    seed: int | None = None
    confidence: float = 0.95

    @property
    def half_width(self) -> float:
        return (self.upper - self.lower) / 2

    def covers(self, value) -> bool:
        return self.lower <= float(value) <= self.upper

    def to_json(self) -> dict:
        return {
            "estimate": self.estimate,
            "ci": [self.lower, self.upper],
            "confidence": self.confidence,
            "n_samples": self.n_samples,
            "successes": self.successes,
            "seed": self.seed,
        }


Sampler = Callable[[np.random.Generator, int], np.ndarray]


def monte_carlo_joint(x0_sampler: Sampler, competitor_samplers: Sequence[Sampler], n_samples: int,
                      seed: int | None = 0, direction: str = GEQ, chunk: int = 1 << 18) -> MonteCarloEstimate:
    """Empirical ``P(all X_i >= X_0)`` with a Wilson 95% interval.

    Samplers are called as ``sampler(rng, size)`` on one generator seeded
    from ``seed``; draws are made chunk by chunk in a fixed order so the
    estimate depends only on ``seed``.
    """
    from statsmodels.stats.proportion import proportion_confint

    _check_direction(direction)
    if n_samples < 1:
        raise InputError("n_samples must be at least 1", field="n_samples")
    rng = np.random.default_rng(seed)
    hits = 0
    remaining = n_samples
    while remaining:
        size = min(chunk, remaining)
        x0 = np.asarray(x0_sampler(rng, size), dtype=float)
        ok = np.ones(size, dtype=bool)
        for sample in competitor_samplers:
            xi = np.asarray(sample(rng, size), dtype=float)
            ok &= (xi >= x0) if direction == GEQ else (xi <= x0)
        hits += int(ok.sum())
        remaining -= size
    lo, hi = proportion_confint(hits, n_samples, alpha=0.05, method="wilson")
    return MonteCarloEstimate(hits / n_samples, float(lo), float(hi), n_samples, hits, seed)
