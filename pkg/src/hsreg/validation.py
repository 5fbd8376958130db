"""Monte Carlo checks of the concentration bounds and of the HSR error bound.

Each check counts how often the stated high-probability event fails over
``trials`` independent draws and compares that rate with
``delta + 3 * sqrt(delta (1 - delta) / trials)`` (a binomial 3-sigma margin).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core_model import LossTable, ParameterError, TrialSeed, check_delta, generate_problem
from .experiment import ExperimentConfig, run_sweep_trial
from .variance_reg import empirical_regularizers

SUITES = ("variance", "bennett", "hoeffding", "thm2")


@dataclass(frozen=True)
class ValidationResult:
    suite: str
    n: int
    delta: float
    trials: int
    violations: int

    @property
    def rate(self) -> float:
        return self.violations / self.trials

    @property
    def allowed(self) -> float:
        return allowed_rate(self.delta, self.trials)

    @property
    def passed(self) -> bool:
        return self.rate <= self.allowed


def allowed_rate(delta: float, trials: int) -> float:
    return delta + 3.0 * math.sqrt(delta * (1.0 - delta) / trials)


def variance_deviation_bound(n: int, delta: float) -> float:
    """|sqrt(Var) - sqrt(V_n)| <= sqrt(2 ln(2/delta) / (n - 1)) w.p. >= 1 - delta."""
    return math.sqrt(2.0 * math.log(2.0 / delta) / (n - 1))


def bennett_bound(n: int, variance, delta: float):
    """Two-sided Bennett deviation of the mean of n i.i.d. [0, 1] variables."""
    log_term = math.log(2.0 / delta)
    return np.sqrt(2.0 * np.asarray(variance) * log_term / n) + log_term / (3.0 * n)


def hoeffding_bound(n: int, delta: float) -> float:
    """Two-sided Hoeffding deviation sqrt(ln(2/delta) / (2n))."""
    return math.sqrt(math.log(2.0 / delta) / (2.0 * n))


def _two_point_draws(n: int, trials: int, seed: int, B: float = 0.25):
    """``trials`` rows of n samples; each row has its own single-coordinate problem."""
    a = np.empty(trials)
    b = np.empty(trials)
    x = np.empty((trials, n))
    for t in range(trials):
        ts = TrialSeed(seed, t)
        problem = generate_problem(1, B, ts.problem_rng())
        signs = ts.sample_rng(n).integers(0, 2, size=n, dtype=np.int8) * 2 - 1
        a[t], b[t] = problem.a[0], problem.b[0]
        x[t] = a[t] + signs * b[t]
    return a, b, x


def _check(n: int, delta: float, trials: int, min_trials: int = 1) -> float:
    delta = check_delta(delta)
    if trials < min_trials:
        raise ParameterError(f"need at least {min_trials} trials, got {trials}")
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    return delta


def validate_variance(n: int, delta: float, trials: int, seed: int = 0) -> ValidationResult:
    delta = _check(n, delta, trials)
    _, b, x = _two_point_draws(n, trials, seed)
    r_n = empirical_regularizers(LossTable(x.T))
    violations = int(np.count_nonzero(np.abs(b - r_n) > variance_deviation_bound(n, delta)))
    return ValidationResult("variance", n, delta, trials, violations)


def validate_bennett(n: int, delta: float, trials: int, seed: int = 0) -> ValidationResult:
    delta = _check(n, delta, trials)
    a, b, x = _two_point_draws(n, trials, seed)
    dev = np.abs(a - x.mean(axis=1))
    violations = int(np.count_nonzero(dev > bennett_bound(n, b ** 2, delta)))
    return ValidationResult("bennett", n, delta, trials, violations)


def validate_hoeffding(n: int, delta: float, trials: int, seed: int = 0) -> ValidationResult:
    delta = _check(n, delta, trials)
    a, _, x = _two_point_draws(n, trials, seed)
    dev = np.abs(a - x.mean(axis=1))
    violations = int(np.count_nonzero(dev > hoeffding_bound(n, delta)))
    return ValidationResult("hoeffding", n, delta, trials, violations)


def validate_thm2(
    n: int,
    delta: float,
    trials: int,
    seed: int = 0,
    K: int = 500,
    B: float = 0.25,
) -> ValidationResult:
    """Fraction of trials where the HSR generalization error exceeds its bound."""
    delta = _check(n, delta, trials)
    if n < 6:
        raise ParameterError(f"n must be >= 6, got {n}")
    config = ExperimentConfig(
        K=K, B=B, delta=delta, n_values=[n], trials=trials, master_seed=seed, methods=["HSR"], diagnostics=True
    )
    config.validate()
    violations = 0
    for t in range(trials):
        (record,) = run_sweep_trial(config, t)
        violations += bool(record.thm2_violated)
    return ValidationResult("thm2", n, delta, trials, violations)


def run_validation(suite: str, n: int, delta: float, trials: int, seed: int = 0) -> ValidationResult:
    funcs = {
        "variance": validate_variance,
        "bennett": validate_bennett,
        "hoeffding": validate_hoeffding,
        "thm2": validate_thm2,
    }
    if suite not in funcs:
        raise ParameterError(f"unknown suite {suite!r}; expected one of {SUITES}")
    return funcs[suite](n, delta, trials, seed)
