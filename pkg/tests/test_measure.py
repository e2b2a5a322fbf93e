from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chebcorr import InputError, MeasureSpace, integrate, total_mass
from chebcorr.measure import FLOAT, format_scalar, ordered_sum, to_scalar

fractions = st.fractions(min_value=-100, max_value=100, max_denominator=50)


def test_integrate_examples():
    assert integrate(MeasureSpace(["a", "b"], [1, 1]), [0, 1]) == 1
    assert integrate(MeasureSpace(["a", "b", "c"], [1, 1, 1]), [3, 3, 5]) == 11
    space = MeasureSpace(["a", "b", "c"], ["1/3", "2", "0"])
    assert integrate(space, [0, 0, 0]) == 0


def test_total_mass_examples():
    assert total_mass(MeasureSpace(["a", "b"], [1, 1])) == 2
    assert total_mass(MeasureSpace(list("abcd"), ["0.5"] * 4)) == 2
    assert total_mass(MeasureSpace([], [], degenerate=True)) == 0


def test_exact_tier_returns_fractions():
    space = MeasureSpace(["a", "b"], ["1/3", "2/3"])
    assert isinstance(integrate(space, [1, 2]), Fraction)
    assert integrate(space, [1, 2]) == Fraction(5, 3)


def test_float_tier():
    space = MeasureSpace(["a", "b"], ["1/4", 0.75], tier=FLOAT)
    assert space.weights == (0.25, 0.75)
    assert integrate(space, [2, "4"]) == 3.5


def test_length_mismatch():
    with pytest.raises(InputError, match="function"):
        integrate(MeasureSpace(["a", "b"], [1, 1]), [1])
    with pytest.raises(InputError, match="weights"):
        MeasureSpace(["a", "b"], [1])


@pytest.mark.parametrize(
    "points, weights, message",
    [
        (["a", "b"], [1, -1], "negative"),
        (["a", "a"], [1, 1], "duplicate"),
        (["a", "b"], [0, 0], "positive weight"),
        (["a"], ["x/2"], "cannot parse"),
        (["a"], [True], "boolean"),
    ],
)
def test_bad_spaces(points, weights, message):
    with pytest.raises(InputError, match=message):
        MeasureSpace(points, weights)


def test_error_names_field_and_index():
    with pytest.raises(InputError) as info:
        MeasureSpace(["a", "b", "c"], [1, 1, -2])
    assert info.value.field == "weights" and info.value.index == 2


def test_degenerate_flag_allows_null_space():
    space = MeasureSpace(["a"], [0], degenerate=True)
    assert total_mass(space) == 0
    assert space.positive_indices() == []


def test_decimal_strings_are_exact():
    assert to_scalar("0.1") == Fraction(1, 10)
    assert to_scalar(" 3/8 ") == Fraction(3, 8)
    assert format_scalar(Fraction(3, 8)) == "3/8"
    assert format_scalar(Fraction(4)) == "4"


def test_float_tier_rejects_nonfinite():
    with pytest.raises(InputError, match="non-finite"):
        to_scalar(float("nan"), FLOAT)


def test_float_sum_is_left_fold():
    values = [1e16, 1.0, -1e16, 1.0]
    acc = 0.0
    for v in values:
        acc += v
    assert ordered_sum(values, FLOAT) == acc


@given(st.lists(st.tuples(fractions, fractions, fractions.filter(lambda w: w >= 0)), min_size=1, max_size=20))
def test_integral_is_linear(rows):
    f, g, w = (list(col) for col in zip(*rows))
    space = MeasureSpace([f"p{j}" for j in range(len(w))], w, degenerate=True)
    assert integrate(space, [a + b for a, b in zip(f, g)]) == integrate(space, f) + integrate(space, g)


@given(fractions, st.lists(fractions.filter(lambda w: w >= 0), min_size=1, max_size=20))
def test_constant_integrates_to_scaled_mass(c, w):
    space = MeasureSpace([f"p{j}" for j in range(len(w))], w, degenerate=True)
    assert integrate(space, [c] * len(w)) == c * total_mass(space)


@given(st.data())
def test_permutation_invariance(data):
    n = data.draw(st.integers(1, 15))
    w = data.draw(st.lists(fractions.filter(lambda x: x > 0), min_size=n, max_size=n))
    f = data.draw(st.lists(fractions, min_size=n, max_size=n))
    order = data.draw(st.permutations(range(n)))
    space = MeasureSpace([f"p{j}" for j in range(n)], w)
    assert integrate(space.permuted(order), [f[j] for j in order]) == integrate(space, f)
