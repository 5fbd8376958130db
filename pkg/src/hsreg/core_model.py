"""Synthetic two-point problem, loss tables and per-trial random streams."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ParameterError(ValueError):
    """Raised when an argument violates an operation's preconditions."""


def check_delta(delta: float) -> float:
    delta = float(delta)
    if not 0.0 < delta < 1.0:
        raise ParameterError(f"delta must lie in (0, 1), got {delta}")
    return delta


@dataclass(frozen=True)
class SyntheticProblem:
    """K independent coordinates, coordinate k taking a_k +/- b_k with equal mass.

    Hypothesis k is the k-th one-hot vector, so its loss on a sample x is x_k
    and its true risk is a_k.
    """

    B: float
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        b = np.array(self.b, dtype=float)
        if a.ndim != 1 or a.shape != b.shape or a.size == 0:
            raise ParameterError("a and b must be non-empty 1-d sequences of equal length")
        if not 0.0 < self.B <= 0.5:
            raise ParameterError(f"B must lie in (0, 1/2], got {self.B}")
        if np.any(a < self.B) or np.any(a > 1.0 - self.B):
            raise ParameterError("every a_k must lie in [B, 1 - B]")
        if np.any(b < 0.0) or np.any(b > self.B):
            raise ParameterError("every b_k must lie in [0, B]")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def K(self) -> int:
        return self.a.size

    def _check_index(self, k: int) -> int:
        if not 0 <= k < self.K:
            raise IndexError(f"hypothesis index {k} out of range for K={self.K}")
        return int(k)

    def true_risk(self, k: int) -> float:
        return float(self.a[self._check_index(k)])

    def true_variance(self, k: int) -> float:
        # two-point law at a +/- b with equal mass: E[(X - a)^2] = b^2
        return float(self.b[self._check_index(k)] ** 2)

    def true_optimum(self) -> tuple[int, float]:
        """Return ``(k_star, L_star_min)``; ``np.argmin`` keeps the lowest index on ties."""
        k = int(np.argmin(self.a))
        return k, float(self.a[k])

    @property
    def r_star(self) -> np.ndarray:
        """Ideal regularizer sqrt(Var) per hypothesis, i.e. b."""
        return self.b


def generate_problem(K: int, B: float, rng: np.random.Generator) -> SyntheticProblem:
    if int(K) != K or K < 1:
        raise ParameterError(f"K must be a positive integer, got {K}")
    if not 0.0 < B <= 0.5:
        raise ParameterError(f"B must lie in (0, 1/2], got {B}")
    a = rng.uniform(B, 1.0 - B, size=int(K))
    b = rng.uniform(0.0, B, size=int(K))
    return SyntheticProblem(B=float(B), a=a, b=b)


@dataclass(frozen=True)
class LossTable:
    """n x K matrix of losses in [0, 1]; column k holds hypothesis k's losses."""

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 2:
            raise ParameterError("loss table must be two-dimensional (n x K)")
        if v.shape[0] < 2:
            raise ParameterError(f"loss table needs n >= 2 rows, got {v.shape[0]}")
        if v.shape[1] < 1:
            raise ParameterError("loss table needs at least one hypothesis column")
        if not np.all(np.isfinite(v)) or np.any(v < 0.0) or np.any(v > 1.0):
            raise ParameterError("loss values must lie in [0, 1]")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def K(self) -> int:
        return self.values.shape[1]

    def column(self, k: int) -> np.ndarray:
        return self.values[:, k]

    def head(self, n: int) -> "LossTable":
        """First ``n`` samples, used when nested sample sizes share one draw."""
        return LossTable(self.values[:n])


def sample_losses(problem: SyntheticProblem, n: int, rng: np.random.Generator) -> LossTable:
    if int(n) != n or n < 2:
        raise ParameterError(f"n must be an integer >= 2, got {n}")
    signs = rng.integers(0, 2, size=(int(n), problem.K), dtype=np.int8) * 2 - 1
    return LossTable(problem.a + signs * problem.b)


# Stream tags keep the problem draw, per-n samples and shared-prefix samples apart.
_PROBLEM_STREAM = 0
_SAMPLE_STREAM = 1
_PREFIX_STREAM = 2


@dataclass(frozen=True)
class TrialSeed:
    """Per-trial stream derived from ``(master_seed, trial_index)`` only.

    Nothing depends on execution order, so trials run in any order or
    process give the same draws.
    """

    master_seed: int
    trial_index: int

    def __post_init__(self):
        if not 0 <= self.master_seed < 2**64:
            raise ParameterError("master_seed must be a 64-bit unsigned integer")
        if self.trial_index < 0:
            raise ParameterError("trial_index must be non-negative")

    def _rng(self, *tags: int) -> np.random.Generator:
        ss = np.random.SeedSequence([self.master_seed, self.trial_index, *tags])
        return np.random.default_rng(ss)

    def problem_rng(self) -> np.random.Generator:
        return self._rng(_PROBLEM_STREAM)

    def sample_rng(self, n: int) -> np.random.Generator:
        return self._rng(_SAMPLE_STREAM, int(n))

    def prefix_rng(self) -> np.random.Generator:
        return self._rng(_PREFIX_STREAM)


def true_risk(problem: SyntheticProblem, k: int) -> float:
    return problem.true_risk(k)


def true_variance(problem: SyntheticProblem, k: int) -> float:
    return problem.true_variance(k)
