"""Verification of Chebyshev-type correlation inequalities on finite measure spaces."""

from .applications import (
    DiscreteDistribution,
    PowerSeriesSpec,
    monte_carlo_joint,
    series_family,
    series_monotonicity,
    win_probability_bounds,
)
from .chebyshev import (
    EqualityClass,
    InequalityReport,
    Verdict,
    anticorrelated_upper_bound,
    classify_equality,
    covariance_gap,
    covariance_identity,
    product_inequality,
    sequence_lemma,
)
from .errors import InconsistencyError, InputError, NotCorrelatedError
from .family import (
    FunctionFamily,
    family_from_columns,
    correlated_naive,
    correlated_sorted,
    is_anticorrelated,
    is_constant_ae,
    is_correlated,
)
from .measure import MeasureSpace, integrate, total_mass
from .quotient import QuotientSpace, build_quotient, interval, lift_integral_check

__version__ = "0.1.0"

__all__ = [
    "DiscreteDistribution",
    "EqualityClass",
    "FunctionFamily",
    "InconsistencyError",
    "InequalityReport",
    "InputError",
    "MeasureSpace",
    "NotCorrelatedError",
    "PowerSeriesSpec",
    "QuotientSpace",
    "Verdict",
    "anticorrelated_upper_bound",
    "build_quotient",
    "classify_equality",
    "correlated_naive",
    "correlated_sorted",
    "covariance_gap",
    "covariance_identity",
    "family_from_columns",
    "integrate",
    "interval",
    "is_anticorrelated",
    "is_constant_ae",
    "is_correlated",
    "lift_integral_check",
    "monte_carlo_joint",
    "product_inequality",
    "sequence_lemma",
    "series_family",
    "series_monotonicity",
    "total_mass",
    "win_probability_bounds",
]
