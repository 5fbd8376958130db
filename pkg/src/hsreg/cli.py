"""Command-line entry point: ``hsreg experiment | bounds | validate``.

Exit codes: 0 success, 1 validation failure, 2 usage or config error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import report
from .bounds import (
    continuous_profile,
    covering_upper_bound_ball,
    epsilon_n,
    spatial_bound_finite,
    uniform_bound_finite,
)
from .config import ConfigError, load_config
from .core_model import ParameterError
from .experiment import run_sweep
from .validation import SUITES, run_validation
from .variance_reg import ContinuousSpaceSpec, delta_n_finite

EXIT_OK, EXIT_VALIDATION, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3



def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_experiment(args) -> int:
    overrides = {
        "trials": args.trials,
        "master_seed": args.seed,
        "n_values": args.n,
        "delta": args.delta,
        "output_dir": args.output_dir,
        "figures": args.figures,
        "diagnostics": True if args.diagnostics else None,
    }
    try:
        config = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"{args.config or '<defaults>'}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return EXIT_USAGE

    def progress(done: int, total: int) -> None:
        if done == total or done % max(1, total // 20) == 0:
            print(f"trials {done}/{total}", file=sys.stderr)

    summary = run_sweep(config, jobs=args.jobs, progress=None if args.quiet else progress)
    out = Path(config.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        report.write_raw_csv(out / "raw.csv", summary.records)
        report.write_summary_csv(out / "summary.csv", summary.rows)
        if config.figures in ("svg", "all"):
            _write_svgs(summary, out)
        if config.figures in ("png", "all"):
            from . import plotting

            plotting.plot_gen_error(summary, out / "gen_error.png")
            plotting.plot_reg_scale(summary, out / "reg_scale.png")
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    if not args.quiet:
        print(f"wrote {out / 'raw.csv'} and {out / 'summary.csv'}", file=sys.stderr)
    return EXIT_OK


def _write_svgs(summary, out: Path) -> None:
    from .svg import write_line_chart

    present = [m for m in ("ERM", "VBR", "HSR") if any(r.method == m for r in summary.rows)]
    err = [(m, *summary.series(m, "mean_gen_error")) for m in present]
    write_line_chart(out / "gen_error.svg", err, "Generalization error", "n", "L*(h) - L*_min", log_y=True)
    scale = [(m, *summary.series(m, "mean_scale")) for m in present if m != "ERM"]
    if scale:
        write_line_chart(out / "reg_scale.svg", scale, "Regularization scale", "n", "scale")


def cmd_bounds(args) -> int:
    try:
        if args.mode == "finite":
            header, rows = _finite_rows(args)
        else:
            header, rows = _continuous_rows(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(report.aligned_table(header, rows))
    if args.csv:
        try:
            report.write_csv(Path(args.csv), header, rows)
        except OSError as exc:
            print(f"I/O error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def _finite_rows(args):
    sizes = args.subset_size or [1, args.K]
    header = ["n", "K", "delta", "alpha_n", "beta_n", "Delta_n", "subset_size", "mu_n", "nu_n"]
    rows = []
    for n in args.n:
        params = uniform_bound_finite(n, args.K, args.delta)
        dn = delta_n_finite(n, args.K, args.delta)
        for s in sizes:
            sp = spatial_bound_finite(n, s, args.delta)
            rows.append([str(n), str(args.K), report.fmt(args.delta)] + [
                f"{x:.10g}" for x in (params.alpha_n, params.beta_n, dn)
            ] + [str(s), f"{sp.mu_n:.10g}", f"{sp.nu_n:.10g}"])
    return header, rows


def _continuous_rows(args):
    if args.radius is not None:
        def covering(eps):
            return covering_upper_bound_ball(args.d, args.radius, eps)
    else:
        def covering(eps):
            return args.covering

    spec = ContinuousSpaceSpec(
        d=args.d, c_ell=args.c_ell, p1_star=args.p1, p2_star=args.p2, covering=covering, c_Lstar=args.c_lstar
    )
    header = ["n", "delta", "Delta_n", "alpha_n", "beta_n", "epsilon_n", "subset_covering", "mu_n", "nu_n", "u_n"]
    rows = []
    for n in args.n:
        sub = args.subset_covering
        if sub is None:
            sub = covering(epsilon_n(n, args.d, args.delta))
        q = continuous_profile(n, args.delta, spec, sub)
        rows.append(
            [str(n), report.fmt(args.delta)]
            + [f"{q[k]:.10g}" for k in ("Delta_n", "alpha_n", "beta_n", "epsilon_n")]
            + [str(sub), f"{q['mu_n']:.10g}", "" if q["nu_n"] is None else f"{q['nu_n']:.10g}", f"{q['u_n']:.10g}"]
        )
    return header, rows


def cmd_validate(args) -> int:
    if args.trials < 100:
        print("error: validate needs --trials >= 100", file=sys.stderr)
        return EXIT_USAGE
    try:
        result = run_validation(args.suite, args.n, args.delta, args.trials, args.seed)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    status = "PASS" if result.passed else "FAIL"
    print(
        f"{status} suite={result.suite} n={result.n} delta={result.delta} trials={result.trials} "
        f"violations={result.violations} rate={result.rate:.6f} allowed={result.allowed:.6f}"
    )
    return EXIT_OK if result.passed else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hsreg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("experiment", help="run the ERM / VBR / HSR Monte Carlo sweep")
    p.add_argument("config", nargs="?", type=Path, help="INI config file (see README)")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=lambda s: int(s, 0), help="master seed")
    p.add_argument("--n", type=_int_list, help="sample sizes, e.g. 20,100,2000")
    p.add_argument("--delta", type=float)
    p.add_argument("--output-dir")
    p.add_argument("--figures", choices=["none", "svg", "png", "all"])
    p.add_argument("--diagnostics", action="store_true", help="attach the HSR error bound to each HSR record")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all CPUs)")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("bounds", help="print uniform / spatial bound parameters")
    p.add_argument("--mode", choices=["finite", "continuous"], default="finite")
    p.add_argument("--n", type=_int_list, default=[100])
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--K", type=int, default=500, help="finite: hypothesis count")
    p.add_argument("--subset-size", type=_int_list, help="finite: subset sizes for mu_n (default 1 and K)")
    p.add_argument("--d", type=int, default=1, help="continuous: dimension")
    p.add_argument("--c-ell", type=float, default=0.0)
    p.add_argument("--p1", type=float, default=0.0)
    p.add_argument("--p2", type=float, default=0.0)
    p.add_argument("--c-lstar", type=float, default=None, help="continuous: local Lipschitz constant of L* (for nu_n)")
    p.add_argument("--covering", type=int, default=1, help="continuous: constant covering number")
    p.add_argument("--radius", type=float, default=None, help="continuous: use the ball covering bound of this radius")
    p.add_argument("--subset-covering", type=int, default=None, help="continuous: N(epsilon_n, F)")
    p.add_argument("--csv", help="also write the table as CSV")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("validate", help="Monte Carlo check of a concentration bound")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=0)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
