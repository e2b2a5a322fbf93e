import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chebcorr import (
    FunctionFamily,
    InputError,
    MeasureSpace,
    correlated_naive,
    correlated_sorted,
    is_anticorrelated,
    is_constant_ae,
    is_correlated,
)
from chebcorr.family import MU_AE, family_from_columns

from generators import correlated_family, random_family
from oracles import brute_correlated


def fam(*rows, weights=None):
    n = len(rows[0])
    weights = weights or [1] * n
    return FunctionFamily(MeasureSpace([f"x{j + 1}" for j in range(n)], weights), rows)


SIGNED_GRID = dict(
    points=["-1", "-1/2", "1/2", "1"],
    weights=["1/2"] * 4,
    functions={"f1": [-1, "-1/2", 0, 0], "f2": [-1, "-1/2", 0, 0], "f3": [0, 0, "1/2", 1]},
)


def test_correlated_examples():
    assert is_correlated(fam([1, 2, 3], [5, 5, 9]))
    result = is_correlated(fam([1, 2], [2, 1]))
    assert not result
    w = result.witness
    assert (w.i, w.j, w.x, w.y) == (0, 1, 0, 1)
    assert w.names == ("f1", "f2") and w.points == ("x1", "x2")
    assert is_correlated(family_from_columns(**SIGNED_GRID))


def test_witness_is_lexicographically_first():
    f = fam([1, 2, 3], [1, 2, 3], [3, 2, 1])
    w = is_correlated(f).witness
    assert (w.i, w.j, w.x, w.y) == (0, 2, 0, 1)


def test_anticorrelated_examples():
    assert is_anticorrelated(fam([1, 2], [2, 1]))
    assert not is_anticorrelated(fam([1, 2], [1, 2]))
    assert is_anticorrelated(fam([7, 7, 7], [3, -1, 8]))
    with pytest.raises(InputError):
        is_anticorrelated(fam([1, 2], [1, 2], [1, 2]))


def test_constant_ae_examples():
    assert is_constant_ae(fam([7, 7, 7]), 0)
    assert is_constant_ae(fam([7, 8, 7], weights=[1, 0, 1]), 0)
    assert not is_constant_ae(fam([7, 8, 7]), 0)


def test_mu_ae_ignores_null_points():
    f = fam([1, 5, 2], [1, 0, 2], weights=[1, 0, 1])
    assert not is_correlated(f)
    assert is_correlated(f, MU_AE)
    assert is_correlated(f.strip_null())
    assert f.strip_null().space.points == ("x1", "x3")


def test_family_validation():
    space = MeasureSpace(["a", "b"], [1, 1])
    with pytest.raises(InputError, match="functions.g"):
        FunctionFamily(space, [[1, 2], [1]], ["f", "g"])
    with pytest.raises(InputError, match="at least one"):
        FunctionFamily(space, [])
    with pytest.raises(InputError, match="mode"):
        is_correlated(FunctionFamily(space, [[1, 2]]), "sometimes")


@settings(max_examples=300)
@given(st.integers(0, 2**32 - 1))
def test_sorted_and_naive_agree_with_brute_force(seed):
    f = random_family(random.Random(seed))
    expected = brute_correlated(f.table, range(f.n))
    naive, fast = correlated_naive(f), correlated_sorted(f)
    assert naive.correlated == fast.correlated == expected
    for res in (naive, fast):
        if not res.correlated:
            w = res.witness
            fi, fj = f.table[w.i], f.table[w.j]
            assert (fi[w.x] - fi[w.y]) * (fj[w.x] - fj[w.y]) < 0


@given(st.integers(0, 2**32 - 1))
def test_relabeling_invariance(seed):
    rng = random.Random(seed)
    f = random_family(rng)
    order = list(range(f.n))
    rng.shuffle(order)
    assert bool(is_correlated(f)) == bool(is_correlated(f.permuted(order)))


@given(st.integers(0, 2**32 - 1))
def test_monotone_along_common_preorder_is_correlated(seed):
    f = correlated_family(random.Random(seed), max_n=15, null_points=False)
    assert is_correlated(f)


@given(st.integers(0, 2**32 - 1), st.fractions(-5, 5, max_denominator=5))
def test_constant_addition_preserves_correlation(seed, c):
    f = correlated_family(random.Random(seed), max_n=15)
    extended = FunctionFamily(f.space, list(f.table) + [[c] * f.n])
    assert is_correlated(extended, MU_AE)


@given(st.integers(0, 2**32 - 1), st.fractions(Fraction(1, 10), 10, max_denominator=10))
def test_scaling(seed, lam):
    rng = random.Random(seed)
    f = correlated_family(rng, k=2, max_n=15, nonneg=False)
    scaled = FunctionFamily(f.space, [[lam * v for v in f.table[0]], f.table[1]])
    assert is_correlated(scaled, MU_AE)
    flipped = FunctionFamily(f.space, [[-lam * v for v in f.table[0]], f.table[1]])
    assert is_anticorrelated(flipped, MU_AE)


@given(st.integers(0, 2**32 - 1))
def test_correlated_and_anticorrelated_pair_has_a_constant(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    f = FunctionFamily(MeasureSpace([str(j) for j in range(n)], [1] * n),
                       [[rng.randint(0, 2) for _ in range(n)] for _ in range(2)])
    if is_correlated(f, MU_AE) and is_anticorrelated(f, MU_AE):
        assert is_constant_ae(f, 0) or is_constant_ae(f, 1)
