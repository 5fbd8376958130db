import itertools
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsreg.core_model import LossTable, ParameterError, TrialSeed, generate_problem, sample_losses
from hsreg.variance_reg import (
    ContinuousSpaceSpec,
    delta_n_continuous,
    delta_n_finite,
    empirical_risk,
    empirical_variance,
    regularizer_profile_finite,
)


def pairwise_variance(xs):
    """O(n^2) definition: 1/(n(n-1)) * sum_{i<j} (x_i - x_j)^2, in exact rationals."""
    from fractions import Fraction

    xs = [Fraction(float(x)) for x in xs]
    n = len(xs)
    total = sum((xi - xj) ** 2 for xi, xj in itertools.combinations(xs, 2))
    return float(total / (n * (n - 1)))


def test_empirical_risk_examples():
    assert empirical_risk([0.2, 0.2, 0.2]) == pytest.approx(0.2)
    assert empirical_risk([0, 1]) == 0.5
    assert empirical_risk([0, 1, 1]) == pytest.approx(2 / 3)
    with pytest.raises(ParameterError):
        empirical_risk([])


@pytest.mark.parametrize(
    "xs,expected",
    [([0.3] * 7, 0.0), ([0, 1], 0.5), ([0, 1, 1], 1 / 3)],
)
def test_empirical_variance_examples(xs, expected):
    assert pairwise_variance(xs) == pytest.approx(expected, abs=1e-15)
    assert empirical_variance(xs) == pytest.approx(expected, abs=1e-15)


def test_empirical_variance_needs_two_points():
    with pytest.raises(ParameterError):
        empirical_variance([0.5])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=2, max_size=60))
def test_one_pass_matches_pairwise(xs):
    assert abs(empirical_variance(xs) - pairwise_variance(xs)) <= 1e-12


def test_one_pass_matches_textbook_form(rng):
    for _ in range(200):
        n = int(rng.integers(2, 300))
        x = rng.random(n)
        textbook = (n * np.sum(x * x) - np.sum(x) ** 2) / (n * (n - 1))
        assert abs(empirical_variance(x) - textbook) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=2, max_size=40), st.randoms())
def test_variance_is_permutation_invariant(xs, r):
    ys = list(xs)
    r.shuffle(ys)
    assert empirical_variance(xs) == pytest.approx(empirical_variance(ys), abs=1e-14)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=2, max_size=60))
def test_variance_range(xs):
    n = len(xs)
    v = empirical_variance(xs)
    assert 0.0 <= v <= n / (2 * (n - 1)) + 1e-15


def test_profile_examples():
    expected = float(mpmath.sqrt(2 * mpmath.log(mpmath.mpf(200000)) / 99))
    assert delta_n_finite(100, 500, 0.5) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(0.49658, abs=1e-5)
    k1 = float(mpmath.sqrt(2 * mpmath.log(24) / 5))
    assert delta_n_finite(6, 1, 0.5) == pytest.approx(k1, rel=1e-12)
    # rounded reference value
    assert k1 == pytest.approx(1.12736, abs=5e-4)


def test_profile_of_constant_table():
    table = LossTable(np.full((10, 4), 0.4))
    prof = regularizer_profile_finite(table, 0.5)
    assert np.all(prof.r_n == 0.0)
    assert prof.delta_n == delta_n_finite(10, 4, 0.5)


def test_profile_matches_columns(rng):
    table = LossTable(rng.random((30, 5)))
    prof = regularizer_profile_finite(table, 0.1)
    for k in range(5):
        assert prof.r_n[k] == pytest.approx(math.sqrt(pairwise_variance(table.column(k))), abs=1e-12)


def test_profile_requires_three_samples():
    with pytest.raises(ParameterError):
        regularizer_profile_finite(LossTable(np.zeros((2, 3))), 0.5)


@pytest.mark.parametrize("K", [1, 10, 500])
@pytest.mark.parametrize("delta", [0.1, 0.5])
def test_delta_n_strictly_decreasing(K, delta):
    vals = [delta_n_finite(n, K, delta) for n in range(3, 3000, 7)]
    assert all(b < a for a, b in zip(vals, vals[1:]))


def test_delta_n_continuous_examples():
    spec = ContinuousSpaceSpec(d=2)
    base = float(mpmath.sqrt(3 * mpmath.log(400) / 100))
    assert delta_n_continuous(100, 0.5, spec) == pytest.approx(base, rel=1e-12)
    assert base == pytest.approx(0.42392, abs=5e-5)
    lip = ContinuousSpaceSpec(d=2, c_ell=1.0)
    assert delta_n_continuous(100, 0.5, lip) == pytest.approx(base + 4 * math.sqrt(2) / 100, rel=1e-12)
    assert delta_n_continuous(100, 0.5, lip) == pytest.approx(0.48049, abs=5e-5)


@pytest.mark.parametrize("N", [1, 3, 50])
def test_delta_n_continuous_grows_with_covering(N):
    one = ContinuousSpaceSpec(d=2, c_ell=0.3, covering=lambda eps: N)
    two = ContinuousSpaceSpec(d=2, c_ell=0.3, covering=lambda eps: 2 * N)
    assert delta_n_continuous(50, 0.2, two) > delta_n_continuous(50, 0.2, one)


def test_delta_n_continuous_rejects_bad_oracle():
    with pytest.raises(ParameterError):
        delta_n_continuous(100, 0.5, ContinuousSpaceSpec(d=1, covering=lambda eps: 0))
    with pytest.raises(ParameterError):
        delta_n_continuous(5, 0.5, ContinuousSpaceSpec(d=1))


@pytest.mark.parametrize("delta_prime", [0.1, 0.5])
@pytest.mark.parametrize("n", [50, 500])
def test_regularizer_deviation_frequency(delta_prime, n):
    trials, ok = 2000, 0
    bound = math.sqrt(2 * math.log(2 / delta_prime) / (n - 1))
    for t in range(trials):
        seed = TrialSeed(99, t)
        p = generate_problem(1, 0.25, seed.problem_rng())
        prof = regularizer_profile_finite(sample_losses(p, n, seed.sample_rng(n)), delta_prime)
        ok += abs(p.b[0] - prof.r_n[0]) <= bound
    assert ok / trials >= 1 - delta_prime - 3 * math.sqrt(delta_prime * (1 - delta_prime) / trials)
