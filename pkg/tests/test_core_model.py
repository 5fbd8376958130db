import numpy as np
import pytest

from hsreg.core_model import (
    LossTable,
    ParameterError,
    SyntheticProblem,
    TrialSeed,
    generate_problem,
    sample_losses,
    true_risk,
    true_variance,
)
from hsreg.variance_reg import empirical_variance


def test_degenerate_interval_forces_mean(rng):
    p = generate_problem(1, 0.5, rng)
    assert p.a[0] == 0.5
    assert 0.0 <= p.b[0] <= 0.5


def test_k500_quarter_bound_ranges(rng):
    p = generate_problem(500, 0.25, rng)
    assert p.K == 500
    assert np.all((p.a >= 0.25) & (p.a <= 0.75))
    assert np.all((p.b >= 0.0) & (p.b <= 0.25))


def test_generation_is_reproducible():
    first = generate_problem(3, 0.25, TrialSeed(7, 3).problem_rng())
    second = generate_problem(3, 0.25, TrialSeed(7, 3).problem_rng())
    assert first.a.tobytes() == second.a.tobytes()
    assert first.b.tobytes() == second.b.tobytes()
    other = generate_problem(3, 0.25, TrialSeed(7, 4).problem_rng())
    assert not np.array_equal(first.a, other.a)


@pytest.mark.parametrize("K,B", [(0, 0.25), (3, 0.0), (3, 0.6), (2.5, 0.25)])
def test_generate_rejects_bad_parameters(K, B, rng):
    with pytest.raises(ParameterError):
        generate_problem(K, B, rng)


def test_problem_invariants_enforced():
    with pytest.raises(ParameterError):
        SyntheticProblem(B=0.25, a=[0.2], b=[0.1])
    with pytest.raises(ParameterError):
        SyntheticProblem(B=0.25, a=[0.3], b=[0.3])
    with pytest.raises(ParameterError):
        SyntheticProblem(B=0.25, a=[0.3, 0.4], b=[0.1])


def test_zero_spread_gives_constant_columns(rng):
    p = SyntheticProblem(B=0.25, a=[0.3, 0.6], b=[0.0, 0.0])
    table = sample_losses(p, 50, rng)
    assert np.all(table.values[:, 0] == 0.3)
    assert np.all(table.values[:, 1] == 0.6)


def test_two_point_support(rng):
    p = SyntheticProblem(B=0.25, a=[0.5], b=[0.25])
    table = sample_losses(p, 4, rng)
    assert set(np.unique(table.values)) <= {0.25, 0.75}


def test_sample_rejects_small_n(rng):
    p = SyntheticProblem(B=0.25, a=[0.5], b=[0.25])
    with pytest.raises(ParameterError):
        sample_losses(p, 1, rng)


def test_extreme_parameters_stay_in_unit_interval(rng):
    B = 0.25
    a = np.array([B, 1 - B, np.nextafter(1 - B, 0)])
    b = np.array([B, B, np.nextafter(B, 0)])
    table = sample_losses(SyntheticProblem(B=B, a=a, b=b), 200, rng)
    assert table.values.min() >= 0.0 and table.values.max() <= 1.0


def test_column_mean_concentrates():
    # E[X_k] = a_k: the mean lies within 3 sd of a_k in >= 99% of trials
    p = SyntheticProblem(B=0.25, a=[0.3, 0.5, 0.7], b=[0.05, 0.25, 0.1])
    n, trials, hits = 2000, 300, 0
    for t in range(trials):
        table = sample_losses(p, n, TrialSeed(1, t).sample_rng(n))
        hits += np.all(np.abs(table.values.mean(axis=0) - p.a) <= 3 * np.sqrt(p.b ** 2 / n))
    # three columns jointly; per-column failure ~0.27%
    assert hits / trials >= 0.99 - 3 * 0.0027


def test_large_sample_moments():
    p = SyntheticProblem(B=0.25, a=[0.3, 0.6], b=[0.2, 0.1])
    n = 10_000
    table = sample_losses(p, n, TrialSeed(2, 0).sample_rng(n))
    means = table.values.mean(axis=0)
    # mean: sd b/sqrt(n); U-statistic variance of a +/- b: sd about b^2/sqrt(n)
    assert np.all(np.abs(means - p.a) <= 5 * p.b / np.sqrt(n))
    for k in range(2):
        assert abs(empirical_variance(table.column(k)) - p.b[k] ** 2) <= 5 * p.b[k] ** 2 / np.sqrt(n)


def test_true_risk_and_optimum():
    p = SyntheticProblem(B=0.25, a=[0.3, 0.5], b=[0.0, 0.1])
    assert true_risk(p, 0) == 0.3
    assert p.true_optimum() == (0, 0.3)
    tie = SyntheticProblem(B=0.25, a=[0.4, 0.4], b=[0.1, 0.0])
    assert tie.true_optimum() == (0, 0.4)
    with pytest.raises(IndexError):
        true_risk(p, 2)


def _two_outcome_variance(a, b):
    return 0.5 * ((a + b) - a) ** 2 + 0.5 * ((a - b) - a) ** 2


@pytest.mark.parametrize("b", [0.0, 0.25, 0.1])
def test_true_variance_matches_two_outcome_oracle(b):
    p = SyntheticProblem(B=0.25, a=[0.5], b=[b])
    assert true_variance(p, 0) == pytest.approx(_two_outcome_variance(0.5, b), abs=1e-15)


def test_true_variance_examples():
    p = SyntheticProblem(B=0.25, a=[0.5, 0.5], b=[0.25, 0.1])
    assert true_variance(p, 0) == pytest.approx(0.0625)
    assert true_variance(p, 1) == pytest.approx(0.01)
    with pytest.raises(IndexError):
        true_variance(p, -1)


def test_loss_table_validation():
    with pytest.raises(ParameterError):
        LossTable(np.array([[0.5, 1.2], [0.1, 0.1]]))
    with pytest.raises(ParameterError):
        LossTable(np.array([[0.5]]))
    t = LossTable([[0.0, 1.0], [0.5, 0.5], [1.0, 0.0]])
    assert (t.n, t.K) == (3, 2)
    assert t.head(2).n == 2


def test_trial_seed_accepts_64_bit_and_is_order_independent():
    big = 2**64 - 1
    x = TrialSeed(big, 5).sample_rng(10).random(4)
    _ = TrialSeed(big, 4).sample_rng(10).random(4)
    assert np.array_equal(x, TrialSeed(big, 5).sample_rng(10).random(4))
    with pytest.raises(ParameterError):
        TrialSeed(2**64, 0)
