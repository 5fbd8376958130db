"""Empirical risk, U-statistic variance and the sqrt-variance regularizer."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core_model import LossTable, ParameterError, check_delta


def empirical_risk(losses) -> float:
    losses = np.asarray(losses, dtype=float)
    if losses.size == 0:
        raise ParameterError("empirical risk of an empty column")
    return float(losses.mean())


def empirical_variance(losses) -> float:
    """Pairwise U-statistic variance, 1/(n(n-1)) * sum_{i<j} (l_i - l_j)^2.

    Evaluated in one pass as (n*sum(l^2) - sum(l)^2) / (n(n-1)) after
    centring, which is the same quantity.
    """
    losses = np.asarray(losses, dtype=float)
    n = losses.size
    if n < 2:
        raise ParameterError(f"empirical variance needs n >= 2, got {n}")
    return float(_column_variances(losses[:, None])[0])


def _column_variances(values: np.ndarray) -> np.ndarray:
    n = values.shape[0]
    # shifting by the mean leaves the pairwise differences unchanged and
    # avoids cancellation in n*sum(x^2) - sum(x)^2
    centred = values - values.mean(axis=0)
    s1 = centred.sum(axis=0)
    s2 = np.einsum("ij,ij->j", centred, centred)
    v = (n * s2 - s1 * s1) / (n * (n - 1))
    return np.maximum(v, 0.0)


def empirical_risks(table: LossTable) -> np.ndarray:
    return table.values.mean(axis=0)


def empirical_regularizers(table: LossTable) -> np.ndarray:
    """sqrt(V_n) for every column of the table."""
    return np.sqrt(_column_variances(table.values))


@dataclass(frozen=True)
class RegularizerProfile:
    r_n: np.ndarray
    delta_n: float

    def __post_init__(self):
        r = np.array(self.r_n, dtype=float)
        if r.ndim != 1 or not np.all(np.isfinite(r)) or np.any(r < 0.0):
            raise ParameterError("r_n must be a finite non-negative vector")
        if not self.delta_n >= 0.0:
            raise ParameterError("delta_n must be non-negative")
        r.setflags(write=False)
        object.__setattr__(self, "r_n", r)


def delta_n_finite(n: int, K: int, delta: float) -> float:
    """Uniform deviation sqrt(2 ln(2Kn/delta)/(n-1)) of sqrt(V_n) over K hypotheses."""
    if n < 3:
        raise ParameterError(f"n must be >= 3, got {n}")
    if K < 1:
        raise ParameterError(f"K must be >= 1, got {K}")
    delta = check_delta(delta)
    return math.sqrt(2.0 * math.log(2.0 * K * n / delta) / (n - 1))


def regularizer_profile_finite(table: LossTable, delta: float) -> RegularizerProfile:
    n, K = table.n, table.K
    if n < 3:
        raise ParameterError(f"n must be >= 3, got {n}")
    return RegularizerProfile(r_n=empirical_regularizers(table), delta_n=delta_n_finite(n, K, delta))


@dataclass(frozen=True)
class ContinuousSpaceSpec:
    """Constants describing a bounded hypothesis set in R^d.

    ``covering(eps)`` returns an upper bound on the covering number of the
    whole hypothesis set at radius ``eps``. ``c_Lstar`` is the local
    Lipschitz constant of the true risk; it is only needed for diagnostics.
    """

    d: int
    c_ell: float = 0.0
    p1_star: float = 0.0
    p2_star: float = 0.0
    covering: Callable[[float], int] = lambda eps: 1
    c_Lstar: Optional[float] = None

    def __post_init__(self):
        if self.d < 1:
            raise ParameterError("dimension d must be >= 1")
        for name in ("c_ell", "p1_star", "p2_star"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be non-negative")
        if self.c_Lstar is not None and self.c_Lstar < 0:
            raise ParameterError("c_Lstar must be non-negative")

    def covering_number(self, eps: float) -> int:
        N = self.covering(eps)
        if int(N) != N or N < 1:
            raise ParameterError(f"covering oracle returned {N!r}; expected an integer >= 1")
        return int(N)


def delta_n_continuous(n: int, delta: float, spec: ContinuousSpaceSpec) -> float:
    if n < 6:
        raise ParameterError(f"n must be >= 6, got {n}")
    delta = check_delta(delta)
    N = spec.covering_number(1.0 / n)
    return math.sqrt(3.0 * math.log(2.0 * n * N / delta) / n) + 4.0 * math.sqrt(2.0) * spec.c_ell / n
