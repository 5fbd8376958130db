"""Variance-regularized ERM with empirical hypothesis space reduction."""

from .bounds import (
    BoundParams,
    HypothesisSubset,
    SpatialParams,
    TheoryDiagnostics,
    continuous_bounds,
    covering_upper_bound_ball,
    epsilon_n,
    reg_upper_bound_finite,
    reg_upper_bound_trivial,
    spatial_bound_finite,
    theory_diagnostics,
    uniform_bound_finite,
)
from .core_model import (
    LossTable,
    ParameterError,
    SyntheticProblem,
    TrialSeed,
    generate_problem,
    sample_losses,
    true_risk,
    true_variance,
)
from .experiment import ExperimentConfig, TrialRecord, erm_solve, run_sweep, run_trial, vbr_solve
from .hsr import HsrResult, run_hsr
from .variance_reg import (
    ContinuousSpaceSpec,
    RegularizerProfile,
    delta_n_continuous,
    empirical_risk,
    empirical_variance,
    regularizer_profile_finite,
)

__version__ = "0.1.0"
