"""Exit criteria. Each test records one PASS/FAIL line in the terminal summary.

Run alone with ``pytest tests/test_acceptance.py``.
"""

import random
from fractions import Fraction

import pytest

from chebcorr import (
    DiscreteDistribution,
    EqualityClass,
    PowerSeriesSpec,
    build_quotient,
    classify_equality,
    correlated_naive,
    correlated_sorted,
    integrate,
    covariance_gap,
    covariance_identity,
    is_correlated,
    lift_integral_check,
    monte_carlo_joint,
    product_inequality,
    series_monotonicity,
    total_mass,
    win_probability_bounds,
)
from chebcorr.applications import CONSTANT, STRICTLY_DECREASING, STRICTLY_INCREASING, builtin_coefficients
from chebcorr.family import family_from_columns
from chebcorr.measure import ordered_sum

from generators import arbitrary_pair, correlated_family, random_distribution, random_family
from oracles import enumerate_win_probability, series_closed_form_geometric_half

pytestmark = pytest.mark.acceptance

F = Fraction


def test_identity_suite(criterion):
    rng = random.Random(1)
    failures = 0
    for _ in range(10_000):
        direct, double = covariance_identity(arbitrary_pair(rng, max_n=50))
        failures += direct != double
    criterion(1, failures == 0, f"covariance identity exact on 10000 arbitrary pairs ({failures} mismatches)")


def test_positivity_suite(criterion):
    rng = random.Random(2)
    failures = 0
    for _ in range(10_000):
        fam = correlated_family(rng, max_k=6, max_n=50)
        assert is_correlated(fam, "mu_ae")
        failures += product_inequality(fam).gap < 0
    criterion(2, failures == 0, f"product gap >= 0 on 10000 nonnegative mu-a.e. correlated families ({failures} failures)")


def test_equality_boundary(criterion):
    rng = random.Random(3)
    bad = []
    for _ in range(1000):
        k = rng.randint(2, 6)
        free = rng.randrange(k)
        fam = correlated_family(rng, k=k, max_n=50, constant=set(range(k)) - {free}, positive_integrals=True)
        r = product_inequality(fam)
        assert all(v > 0 for v in r.integrals)
        if not (r.gap == 0 and classify_equality(fam, r) is EqualityClass.CONSTANT):
            bad.append(("k-1 constant", r.gap))
    for _ in range(1000):
        k = rng.randint(2, 6)
        a, b = rng.sample(range(k), 2)
        fam = correlated_family(rng, k=k, max_n=50, constant=set(range(k)) - {a, b}, strict={a, b},
                                positive_integrals=True)
        r = product_inequality(fam)
        assert all(v > 0 for v in r.integrals)
        if not (r.gap > 0 and classify_equality(fam, r) is EqualityClass.STRICT):
            bad.append(("two nonconstant", r.gap))
    criterion(3, not bad, f"equality iff >= k-1 constant on 2x1000 targeted families ({len(bad)} failures)")


def test_counterexample_regression(criterion):
    fam = family_from_columns(
        points=["-1", "-1/2", "1/2", "1"],
        weights=["1/2"] * 4,
        functions={"f1": [-1, "-1/2", 0, 0], "f2": [-1, "-1/2", 0, 0], "f3": [0, 0, "1/2", 1]},
    )
    r = product_inequality(fam, require_nonneg=False)
    ok = bool(is_correlated(fam)) and r.lhs == 0 and r.rhs == F(27, 64) and r.lhs < r.rhs
    criterion(4, ok, f"signed k=3 grid: correlated, lhs={r.lhs} < rhs={r.rhs}")


def test_quotient_suite(criterion):
    rng = random.Random(5)
    problems = 0
    for _ in range(1000):
        fam = correlated_family(rng, max_n=50)
        stripped = fam.strip_null()
        qs = build_quotient(stripped)
        problems += ordered_sum(qs.class_weights, "exact") != total_mass(fam.space)
        problems += any(b < a for row in qs.rep_values for a, b in zip(row, row[1:]))
        for i in range(fam.k):
            on_x, on_classes = lift_integral_check(stripped, qs, i)
            problems += not (on_x == on_classes == integrate(fam.space, fam.table[i]))
        qfam = qs.as_family()
        a, b = product_inequality(fam), product_inequality(qfam)
        problems += (a.lhs, a.rhs, a.gap, a.verdict, a.equality_class) != (b.lhs, b.rhs, b.gap, b.verdict, b.equality_class)
        if fam.k == 2:
            a, b = covariance_gap(fam), covariance_gap(qfam)
            problems += (a.lhs, a.rhs, a.gap, a.verdict) != (b.lhs, b.rhs, b.gap, b.verdict)
    criterion(5, problems == 0, f"quotient mass, monotonicity, integrals and reports on 1000 families ({problems} problems)")


def test_probability_bound(criterion):
    u = DiscreteDistribution.uniform([1, 2])
    law = ([F(1), F(2)], [F(1, 2), F(1, 2)])
    fixture_ok = True
    for direction in ("geq", "leq"):
        r = win_probability_bounds(u, [u, u], direction)
        joint, _ = enumerate_win_probability(law, [law, law], direction)
        fixture_ok &= r.joint == joint == F(5, 8) and r.product_bound == F(9, 16)
    mc = monte_carlo_joint(u.sampler(), [u.sampler(), u.sampler()], 10**6, seed=12345)
    mc_ok = mc.covers(F(5, 8))

    rng = random.Random(6)
    failures = checked = 0
    for trial in range(500):
        small = trial % 2 == 0
        max_support, max_k = (4, 3) if small else (10, 5)
        x0 = random_distribution(rng, max_support)
        comps = [random_distribution(rng, max_support) for _ in range(rng.randint(1, max_k))]
        d0, ds = DiscreteDistribution(*x0), [DiscreteDistribution(*c) for c in comps]
        for direction in ("geq", "leq"):
            r = win_probability_bounds(d0, ds, direction)
            failures += r.joint < r.product_bound
            if small:
                joint, marg = enumerate_win_probability(x0, comps, direction)
                failures += (r.joint, list(r.marginals)) != (joint, marg)
                checked += 1
    ok = fixture_ok and mc_ok and failures == 0 and checked >= 500
    criterion(
        6,
        ok,
        f"uniform fixture 5/8 >= 9/16; MC {mc.estimate:.5f} in [{mc.lower:.5f}, {mc.upper:.5f}]; "
        f"500 random instances, {checked} enumeration cross-checks, {failures} failures",
    )


def test_power_series(criterion):
    grid = [F(i, 10) for i in range(1, 10)]
    r = series_monotonicity(PowerSeriesSpec(builtin_coefficients("geometric:1/2"), 1, truncation=64), grid)
    err = max(abs(float(b.mid) - float(series_closed_form_geometric_half(z))) for z, b in zip(grid, r.g_corrected))
    half_ok = r.corrected_verdict == STRICTLY_DECREASING and err <= 1e-12
    r1 = series_monotonicity(PowerSeriesSpec(builtin_coefficients("ones"), 1, truncation=64), grid)
    ones_ok = (
        r1.corrected_verdict == CONSTANT
        and all(b.lo <= 1 <= b.hi for b in r1.g_corrected)
        and r1.literal_verdict == STRICTLY_INCREASING
        and not r1.literal_matches
    )
    criterion(
        7,
        half_ok and ones_ok,
        f"a_n=2^-n: {r.corrected_verdict}, max err {err:.1e}; a_n=1: corrected {r1.corrected_verdict}, "
        f"literal {r1.literal_verdict}",
    )


def test_checkers_agree(criterion):
    rng = random.Random(8)
    disagreements = 0
    negatives = 0
    for _ in range(10_000):
        fam = random_family(rng, max_k=5, max_n=15)
        naive, fast = correlated_naive(fam), correlated_sorted(fam)
        disagreements += naive.correlated != fast.correlated
        if not naive.correlated:
            negatives += 1
            disagreements += naive.witness is None or fast.witness is None
    criterion(8, disagreements == 0 and negatives > 0,
              f"sorted vs naive on 10000 families ({negatives} non-correlated, {disagreements} disagreements)")
