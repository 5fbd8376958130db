"""Uniform and spatial uniform bounds, regularization upper-bounds, covering numbers.

Finite-space formulas use the union bound over K (or |F|) hypotheses with
Bennett's inequality; the continuous-space ones go through a covering of a
bounded subset of R^d. All logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .core_model import ParameterError, SyntheticProblem, check_delta
from .variance_reg import ContinuousSpaceSpec, RegularizerProfile, delta_n_continuous


class DiagnosticUnavailable(ValueError):
    """A diagnostic quantity needs a true-world constant that was not supplied."""


def _log(x: float) -> float:
    if not x > 1.0:
        raise ParameterError(f"log argument must exceed 1, got {x}")
    return math.log(x)


@dataclass(frozen=True)
class BoundParams:
    alpha_n: float
    beta_n: float


@dataclass(frozen=True)
class SpatialParams:
    mu_n: float
    nu_n: Optional[float]


class HypothesisSubset:
    """Sorted, duplicate-free set of hypothesis indices."""

    __slots__ = ("_indices",)

    def __init__(self, indices: Iterable[int], K: Optional[int] = None):
        if not isinstance(indices, np.ndarray):
            indices = list(indices)
        idx = np.unique(np.asarray(indices, dtype=np.int64))
        if idx.size and idx[0] < 0:
            raise ParameterError("hypothesis indices must be non-negative")
        if K is not None and idx.size and idx[-1] >= K:
            raise ParameterError(f"hypothesis index {idx[-1]} out of range for K={K}")
        idx.setflags(write=False)
        self._indices = idx

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "HypothesisSubset":
        return cls(np.flatnonzero(mask))

    @property
    def indices(self) -> np.ndarray:
        return self._indices

    @property
    def size(self) -> int:
        return int(self._indices.size)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, k) -> bool:
        i = np.searchsorted(self._indices, k)
        return bool(i < self._indices.size and self._indices[i] == k)

    def __iter__(self):
        return iter(self._indices.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, HypothesisSubset):
            return NotImplemented
        return np.array_equal(self._indices, other._indices)

    def __hash__(self):
        return hash(self._indices.tobytes())

    def issubset(self, other: "HypothesisSubset") -> bool:
        return bool(np.all(np.isin(self._indices, other._indices)))

    def __repr__(self) -> str:
        return f"HypothesisSubset({self._indices.tolist()})"


def uniform_bound_finite(n: int, K: int, delta: float) -> BoundParams:
    if n < 3:
        raise ParameterError(f"n must be >= 3, got {n}")
    if K < 1:
        raise ParameterError(f"K must be >= 1, got {K}")
    delta = check_delta(delta)
    log_term = _log(2.0 * K * n / delta)
    return BoundParams(alpha_n=math.sqrt(2.0 * log_term), beta_n=log_term / (3.0 * n))


def spatial_bound_finite(n: int, subset_size: int, delta: float) -> SpatialParams:
    """(mu_n, nu_n) for a finite subset of the given size.

    nu_n is the Bennett residual paired with mu_n; the algorithm never reads it.
    """
    if n < 3:
        raise ParameterError(f"n must be >= 3, got {n}")
    if subset_size < 1:
        raise ParameterError("spatial bound of an empty subset")
    delta = check_delta(delta)
    log_term = _log(2.0 * n * subset_size / (delta * (n - 2)))
    return SpatialParams(mu_n=math.sqrt(2.0 * log_term), nu_n=log_term / (3.0 * n))


def reg_upper_bound_finite(profile: RegularizerProfile, subset: HypothesisSubset) -> float:
    """Exact max of r_n over the subset (tightest valid upper-bound on a finite space)."""
    if subset.size == 0:
        raise ParameterError("regularization upper-bound of an empty subset")
    return float(profile.r_n[subset.indices].max())


def reg_upper_bound_trivial() -> float:
    # sqrt(V_n) <= sqrt(n / (2(n-1))) <= 1 for losses in [0, 1] and n >= 2
    return 1.0


def epsilon_n(n: int, d: int, delta: float) -> float:
    if n < 2 or d < 1:
        raise ParameterError("epsilon_n needs n >= 2 and d >= 1")
    delta = check_delta(delta)
    return _log(n / delta) ** 0.25 / n ** (0.25 + 1.0 / d)


def continuous_bounds(
    n: int,
    delta: float,
    spec: ContinuousSpaceSpec,
    subset_covering: int,
    with_nu: bool = True,
) -> tuple[BoundParams, SpatialParams]:
    """Bennett/Lipschitz bounds for a bounded hypothesis set in R^d.

    ``subset_covering`` is N(epsilon_n, F). nu_n depends on the local
    Lipschitz constant of the true risk, so it is a diagnostic only and
    requires ``spec.c_Lstar``; pass ``with_nu=False`` to skip it.
    """
    if n < 6:
        raise ParameterError(f"n must be >= 6, got {n}")
    delta = check_delta(delta)
    if int(subset_covering) != subset_covering or subset_covering < 1:
        raise ParameterError("subset covering number must be an integer >= 1")
    d = spec.d
    log_full = _log(2.0 * n * spec.covering_number(1.0 / n) / delta)
    alpha = math.sqrt(2.0 * log_full)
    beta = (4.0 * spec.c_ell + 1.0) * log_full / n

    mu = math.sqrt(2.0 * _log(2.0 * n * subset_covering / ((n - 3) * delta)))
    nu = None
    if with_nu:
        if spec.c_Lstar is None:
            raise DiagnosticUnavailable("nu_n needs the local Lipschitz constant c_Lstar of the true risk")
        l_n = _log(n / delta)
        nu = (
            2.0 * spec.c_Lstar * l_n ** 0.25 / n ** (0.25 + 1.0 / d)
            + spec.p2_star * l_n ** 0.5 / n ** (0.5 + 2.0 / d)
            + 4.0
            * math.sqrt(spec.p1_star ** 2 * d ** 2 + spec.c_ell ** 2)
            * _log(2.0 * d * n * subset_covering / delta) ** 0.75
            / n ** (0.75 + 1.0 / d)
            + _log(4.0 * subset_covering / delta) / (3.0 * n)
        )
    return BoundParams(alpha, beta), SpatialParams(mu, nu)


def continuous_profile(n: int, delta: float, spec: ContinuousSpaceSpec, subset_covering: int) -> dict:
    """Every continuous-space quantity at once, for reporting."""
    params, spatial = continuous_bounds(n, delta, spec, subset_covering, with_nu=spec.c_Lstar is not None)
    return {
        "n": n,
        "delta": delta,
        "Delta_n": delta_n_continuous(n, delta, spec),
        "alpha_n": params.alpha_n,
        "beta_n": params.beta_n,
        "epsilon_n": epsilon_n(n, spec.d, delta),
        "mu_n": spatial.mu_n,
        "nu_n": spatial.nu_n,
        "u_n": reg_upper_bound_trivial(),
    }


def covering_upper_bound_ball(d: int, radius: float, eps: float) -> int:
    """Upper bound ceil((2 sqrt(d) R / eps)^d) on the eps-covering number of a radius-R ball in R^d."""
    if eps <= 0:
        raise ParameterError(f"eps must be positive, got {eps}")
    if radius < 0 or d < 1:
        raise ParameterError("radius must be >= 0 and d >= 1")
    return max(1, math.ceil((2.0 * math.sqrt(d) * radius / eps) ** d))


@dataclass(frozen=True)
class TheoryDiagnostics:
    gbar_threshold: np.ndarray
    gbar_size: int
    u_star_gbar: float
    fbar_threshold: float
    fbar_size: int
    r_star_min: float
    v_star_opt: float
    mu_fbar: float
    nu_fbar: float
    thm2_rhs: float


def theory_diagnostics(
    problem: SyntheticProblem,
    params: BoundParams,
    profile: RegularizerProfile,
    n: int,
    delta: float,
) -> TheoryDiagnostics:
    """Oracle-side neighbourhoods of the true optimum and the resulting error bound.

    Only computable when the true risks a_k and ideal regularizers b_k are
    known. Only ``profile.delta_n`` is read from the profile.
    """
    delta_n = profile.delta_n
    a, r_star = problem.a, problem.r_star
    l_min = float(a.min())
    alpha, beta = params.alpha_n, params.beta_n
    sqrt_n = math.sqrt(n)

    gbar_threshold = l_min + alpha * (6.0 * r_star + 11.0 * delta_n) / sqrt_n + 7.0 * beta
    gbar = a <= gbar_threshold
    u_star = float(r_star[gbar].max())
    fbar_threshold = l_min + alpha * (5.0 * u_star + 6.0 * delta_n) / sqrt_n + 7.0 * beta
    fbar_size = int(np.count_nonzero(a <= fbar_threshold))

    optimal = a == l_min
    r_star_min = float(r_star[optimal].min())
    spatial = spatial_bound_finite(n, fbar_size, delta)
    rhs = 2.0 * spatial.mu_n * (r_star_min + delta_n) / sqrt_n + 2.0 * spatial.nu_n
    return TheoryDiagnostics(
        gbar_threshold=gbar_threshold,
        gbar_size=int(np.count_nonzero(gbar)),
        u_star_gbar=u_star,
        fbar_threshold=fbar_threshold,
        fbar_size=fbar_size,
        r_star_min=r_star_min,
        v_star_opt=r_star_min ** 2,
        mu_fbar=spatial.mu_n,
        nu_fbar=spatial.nu_n,
        thm2_rhs=rhs,
    )
