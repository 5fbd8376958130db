"""Regularized ERM with empirical hypothesis space reduction over a finite space.

The four steps:

1. ``v`` = min over all h of L(h) + alpha_n / sqrt(n) * r_n(h).
2. G = {h : L(h) <= v + (3 alpha_n r_n(h) + 7 alpha_n Delta_n) / sqrt(n) + 5 beta_n},
   and u_G = max of r_n over G.
3. F = {h : L(h) <= v + (3 alpha_n u_G + 5 alpha_n Delta_n) / sqrt(n) + 5 beta_n},
   and mu_F = mu_n(F), the spatial bound of the reduced set.
4. The answer minimizes L(h) + mu_F / sqrt(n) * r_n(h) over the *full* space;
   F only sets the scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import HypothesisSubset, reg_upper_bound_finite, spatial_bound_finite, uniform_bound_finite
from .core_model import LossTable, ParameterError, check_delta
from .variance_reg import RegularizerProfile, empirical_risks, regularizer_profile_finite


def _argmin(objective: np.ndarray) -> int:
    # np.argmin returns the first occurrence, i.e. the lowest index on ties
    return int(np.argmin(objective))


def step1_optimum_value(L, profile: RegularizerProfile, alpha_n: float, n: int) -> tuple[float, int]:
    objective = np.asarray(L, dtype=float) + alpha_n / math.sqrt(n) * profile.r_n
    k = _argmin(objective)
    return float(objective[k]), k


def step2_reduce_G(L, profile: RegularizerProfile, alpha_n: float, beta_n: float, v: float, n: int):
    L = np.asarray(L, dtype=float)
    threshold = v + (3.0 * alpha_n * profile.r_n + 7.0 * alpha_n * profile.delta_n) / math.sqrt(n) + 5.0 * beta_n
    g_set = HypothesisSubset.from_mask(L <= threshold)
    return g_set, reg_upper_bound_finite(profile, g_set)


def step3_reduce_F(L, profile: RegularizerProfile, alpha_n: float, beta_n: float, v: float, u_g: float, n: int, delta: float):
    L = np.asarray(L, dtype=float)
    threshold = v + (3.0 * alpha_n * u_g + 5.0 * alpha_n * profile.delta_n) / math.sqrt(n) + 5.0 * beta_n
    f_set = HypothesisSubset.from_mask(L <= threshold)
    return f_set, spatial_bound_finite(n, f_set.size, delta).mu_n


def step4_final(L, profile: RegularizerProfile, mu_f: float, n: int) -> int:
    return _argmin(np.asarray(L, dtype=float) + mu_f / math.sqrt(n) * profile.r_n)


@dataclass(frozen=True)
class HsrResult:
    v: float
    step1_argmin: int
    g_set: HypothesisSubset
    u_g: float
    f_set: HypothesisSubset
    mu_f: float
    chosen: int
    effective_scale: float
    alpha_n: float
    beta_n: float
    profile: RegularizerProfile

    @property
    def delta_n(self) -> float:
        return self.profile.delta_n


def run_hsr(table: LossTable, delta: float) -> HsrResult:
    n, K = table.n, table.K
    if n < 3:
        raise ParameterError(f"HSR needs n >= 3, got {n}")
    delta = check_delta(delta)
    L = empirical_risks(table)
    profile = regularizer_profile_finite(table, delta)
    params = uniform_bound_finite(n, K, delta)

    v, g = step1_optimum_value(L, profile, params.alpha_n, n)
    g_set, u_g = step2_reduce_G(L, profile, params.alpha_n, params.beta_n, v, n)
    f_set, mu_f = step3_reduce_F(L, profile, params.alpha_n, params.beta_n, v, u_g, n, delta)
    chosen = step4_final(L, profile, mu_f, n)
    return HsrResult(
        v=v,
        step1_argmin=g,
        g_set=g_set,
        u_g=u_g,
        f_set=f_set,
        mu_f=mu_f,
        chosen=chosen,
        effective_scale=mu_f / math.sqrt(n),
        alpha_n=params.alpha_n,
        beta_n=params.beta_n,
        profile=profile,
    )
