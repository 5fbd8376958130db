"""Matplotlib renderings of the sweep summary (optional ``plot`` extra)."""

from __future__ import annotations

from pathlib import Path

from .experiment import SweepSummary
from .svg import COLORS


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _methods(summary: SweepSummary, allowed) -> list[str]:
    present = {r.method for r in summary.rows}
    return [m for m in allowed if m in present]


def plot_gen_error(summary: SweepSummary, path: Path) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    for m in _methods(summary, ("ERM", "VBR", "HSR")):
        ns, err = summary.series(m, "mean_gen_error")
        _, se = summary.series(m, "stderr_gen_error")
        ax.errorbar(ns, err, yerr=se, label=m, color=COLORS[m], marker="o", ms=3, capsize=2)
    ax.set_yscale("log")
    ax.set_xlabel("number of samples n")
    ax.set_ylabel("generalization error")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_reg_scale(summary: SweepSummary, path: Path) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    for m in _methods(summary, ("VBR", "HSR")):
        ns, scale = summary.series(m, "mean_scale")
        ax.plot(ns, scale, label=m, color=COLORS[m], marker="o", ms=3)
    ax.set_xlabel("number of samples n")
    ax.set_ylabel("regularization scale")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
