"""ERM / VBR baselines and the paired Monte Carlo sweep over sample sizes."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .bounds import BoundParams, theory_diagnostics
from .core_model import (
    LossTable,
    ParameterError,
    SyntheticProblem,
    TrialSeed,
    check_delta,
    generate_problem,
    sample_losses,
)
from .hsr import run_hsr
from .variance_reg import empirical_regularizers, empirical_risks

METHODS = ("ERM", "VBR", "HSR")


def erm_solve(table: LossTable) -> int:
    return int(np.argmin(empirical_risks(table)))


def vbr_scale(n: int, K: int, delta: float) -> float:
    """lambda_n = sqrt(2 ln(2K/delta) / n); the 1/sqrt(n) factor is already inside."""
    return math.sqrt(2.0 * math.log(2.0 * K / check_delta(delta)) / n)


def vbr_solve(table: LossTable, delta: float) -> tuple[int, float]:
    lam = vbr_scale(table.n, table.K, delta)
    objective = empirical_risks(table) + lam * empirical_regularizers(table)
    return int(np.argmin(objective)), lam


@dataclass(frozen=True)
class TrialRecord:
    trial_index: int
    n: int
    method: str
    chosen: int
    gen_error: float
    scale: float
    g_size: Optional[int] = None
    f_size: Optional[int] = None
    thm2_rhs: Optional[float] = None
    thm2_violated: Optional[bool] = None


def solve_all(
    problem: SyntheticProblem,
    table: LossTable,
    delta: float,
    trial_index: int = 0,
    methods: Sequence[str] = METHODS,
    with_diagnostics: bool = False,
) -> list[TrialRecord]:
    """Run every requested method on one shared loss table."""
    n = table.n
    _, l_min = problem.true_optimum()

    def gen_error(k: int) -> float:
        return float(problem.a[k] - l_min)

    records = []
    for method in METHODS:
        if method not in methods:
            continue
        if method == "ERM":
            k = erm_solve(table)
            records.append(TrialRecord(trial_index, n, method, k, gen_error(k), 0.0))
        elif method == "VBR":
            k, lam = vbr_solve(table, delta)
            records.append(TrialRecord(trial_index, n, method, k, gen_error(k), lam))
        else:
            res = run_hsr(table, delta)
            rhs = violated = None
            if with_diagnostics:
                diag = theory_diagnostics(
                    problem,
                    BoundParams(res.alpha_n, res.beta_n),
                    res.profile,
                    n,
                    delta,
                )
                rhs = diag.thm2_rhs
                violated = gen_error(res.chosen) > rhs
            records.append(
                TrialRecord(
                    trial_index,
                    n,
                    method,
                    res.chosen,
                    gen_error(res.chosen),
                    res.effective_scale,
                    g_size=res.g_set.size,
                    f_size=res.f_set.size,
                    thm2_rhs=rhs,
                    thm2_violated=violated,
                )
            )
    return records


def run_trial(
    problem: SyntheticProblem,
    n: int,
    delta: float,
    seed: TrialSeed,
    with_diagnostics: bool = False,
    methods: Sequence[str] = METHODS,
) -> list[TrialRecord]:
    if n < 6:
        raise ParameterError(f"n must be >= 6, got {n}")
    table = sample_losses(problem, n, seed.sample_rng(n))
    return solve_all(problem, table, delta, seed.trial_index, methods, with_diagnostics)


@dataclass
class ExperimentConfig:
    K: int = 500
    B: float = 0.25
    delta: float = 0.5
    n_values: list[int] = field(default_factory=lambda: [20, 50, 100, 200, 300, 500, 1000, 1500, 2000])
    trials: int = 1000
    master_seed: int = 0
    methods: list[str] = field(default_factory=lambda: list(METHODS))
    diagnostics: bool = False
    reuse_prefix: bool = False
    output_dir: str = "."
    figures: str = "none"

    def validate(self) -> None:
        if self.K < 1:
            raise ParameterError("K must be >= 1")
        if not 0.0 < self.B <= 0.5:
            raise ParameterError("B must lie in (0, 1/2]")
        check_delta(self.delta)
        if not self.n_values:
            raise ParameterError("n_values must not be empty")
        if any(n < 6 for n in self.n_values):
            raise ParameterError("every entry of n_values must be >= 6")
        if len(set(self.n_values)) != len(self.n_values):
            raise ParameterError("n_values must not repeat")
        if self.trials < 1:
            raise ParameterError("trials must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ParameterError("master_seed must be a 64-bit unsigned integer")
        if not self.methods or any(m not in METHODS for m in self.methods):
            raise ParameterError(f"methods must be a non-empty subset of {METHODS}")
        if self.diagnostics and "HSR" not in self.methods:
            raise ParameterError("diagnostics require the HSR method")
        if self.figures not in ("none", "svg", "png", "all"):
            raise ParameterError("figures must be one of none, svg, png, all")


def run_sweep_trial(config: ExperimentConfig, trial_index: int) -> list[TrialRecord]:
    """Fresh (a, b) for the trial, then one paired sample per n."""
    seed = TrialSeed(config.master_seed, trial_index)
    problem = generate_problem(config.K, config.B, seed.problem_rng())
    n_values = sorted(config.n_values)
    shared = sample_losses(problem, n_values[-1], seed.prefix_rng()) if config.reuse_prefix else None
    records = []
    for n in n_values:
        if shared is not None:
            table = shared.head(n)
            records.extend(solve_all(problem, table, config.delta, trial_index, config.methods, config.diagnostics))
        else:
            records.extend(run_trial(problem, n, config.delta, seed, config.diagnostics, config.methods))
    return records


def _sweep_chunk(args) -> list[TrialRecord]:
    config, indices = args
    out = []
    for t in indices:
        out.extend(run_sweep_trial(config, t))
    return out


def run_sweep_records(
    config: ExperimentConfig,
    jobs: Optional[int] = None,
    progress: Optional[Callable[[int, int], None]] = None,
) -> list[TrialRecord]:
    """All trial records, sorted by (trial, n, method) whatever the worker count."""
    config.validate()
    jobs = jobs or os.cpu_count() or 1
    trials = list(range(config.trials))
    records: list[TrialRecord] = []
    if jobs == 1:
        for t in trials:
            records.extend(run_sweep_trial(config, t))
            if progress:
                progress(t + 1, config.trials)
    else:
        chunk = max(1, min(25, config.trials // (4 * jobs) or 1))
        chunks = [trials[i:i + chunk] for i in range(0, len(trials), chunk)]
        done = 0
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_sweep_chunk, [(config, c) for c in chunks]):
                records.extend(part)
                done += len({r.trial_index for r in part})
                if progress:
                    progress(done, config.trials)
    records.sort(key=lambda r: (r.trial_index, r.n, r.method))
    return records


@dataclass(frozen=True)
class SummaryRow:
    n: int
    method: str
    trials: int
    mean_gen_error: float
    stderr_gen_error: float
    mean_scale: float
    mean_f_size: Optional[float]
    thm2_violation_rate: Optional[float]


@dataclass(frozen=True)
class SweepSummary:
    rows: list[SummaryRow]
    records: list[TrialRecord]

    def get(self, n: int, method: str) -> SummaryRow:
        for row in self.rows:
            if row.n == n and row.method == method:
                return row
        raise KeyError((n, method))

    def series(self, method: str, attr: str) -> tuple[list[int], list[float]]:
        rows = sorted((r for r in self.rows if r.method == method), key=lambda r: r.n)
        return [r.n for r in rows], [getattr(r, attr) for r in rows]

    def paired_difference(self, n: int, first: str, second: str) -> tuple[float, float]:
        """Mean and standard error of gen_error(first) - gen_error(second), paired by trial."""
        by_trial: dict[int, dict[str, float]] = {}
        for r in self.records:
            if r.n == n and r.method in (first, second):
                by_trial.setdefault(r.trial_index, {})[r.method] = r.gen_error
        diffs = np.array([d[first] - d[second] for _, d in sorted(by_trial.items())])
        se = float(diffs.std(ddof=1) / math.sqrt(diffs.size)) if diffs.size > 1 else math.nan
        return float(diffs.mean()), se


def summarize(records: Sequence[TrialRecord]) -> SweepSummary:
    groups: dict[tuple[int, str], list[TrialRecord]] = {}
    for r in sorted(records, key=lambda r: (r.trial_index, r.n, r.method)):
        groups.setdefault((r.n, r.method), []).append(r)
    rows = []
    for (n, method), recs in sorted(groups.items()):
        err = np.array([r.gen_error for r in recs])
        se = float(err.std(ddof=1) / math.sqrt(err.size)) if err.size > 1 else math.nan
        f_sizes = [r.f_size for r in recs if r.f_size is not None]
        flags = [r.thm2_violated for r in recs if r.thm2_violated is not None]
        rows.append(
            SummaryRow(
                n=n,
                method=method,
                trials=len(recs),
                mean_gen_error=float(err.mean()),
                stderr_gen_error=se,
                mean_scale=float(np.mean([r.scale for r in recs])),
                mean_f_size=float(np.mean(f_sizes)) if f_sizes else None,
                thm2_violation_rate=float(np.mean(flags)) if flags else None,
            )
        )
    return SweepSummary(rows=rows, records=list(records))


def run_sweep(config: ExperimentConfig, jobs: Optional[int] = None, progress=None) -> SweepSummary:
    return summarize(run_sweep_records(config, jobs=jobs, progress=progress))
