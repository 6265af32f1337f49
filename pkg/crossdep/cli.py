"""
Command-line entry point.

    crossdep test --input panel.csv [--comparators] [--summary]
    crossdep simulate --null ar1 --dist normal --N 100 --T 200 --p 3 --reps 1000
    crossdep table --table 1 --cell N=100,T=200,p=3,dist=normal,proc=ar1
    crossdep table --table 3 --grid
    crossdep sweep --N 100 --T 300 --k 2,4,8,16

Exit codes: 0 success, 1 computational error, 2 input error.
"""

import argparse
import logging
import sys
from typing import Any, Dict, Optional, Sequence

from .core.distributions import Innovation
from .core.exceptions import ConfigError, CrossDepError
from .core.panel import build_residuals, residual_correlations, summarize_correlations
from .core.simulation import (
    ErrorProcess,
    run_density_sweep,
    run_monte_carlo,
    run_table_grid,
)
from .core.simulation.runner import DEFAULT_K_VALUES, TABLE_ALTERNATIVES
from .services.ingestion import load_panel_csv
from .services.reporting import (
    format_correlation_summary,
    format_mc_report,
    format_records,
    format_sweep,
    format_table,
    run_tests,
)
from .settings import load_config_file, mc_config, merge_options, run_settings

logger = logging.getLogger(__name__)

CELL_KEYS = {"N": "N", "T": "T", "p": "p", "dist": "dist", "proc": "null"}


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Flat key=value config file")
    common.add_argument("--alpha", type=float, help="Significance level (default 0.05)")
    common.add_argument("--nu", type=float, help="Max-test thresholding constant (default 1.42)")
    common.add_argument("--comparators", action="store_true", default=None, help="Also run the LM/CD tests")
    common.add_argument("--format", choices=["csv", "json"], help="Report format (default csv)")
    common.add_argument("--threads", "--workers", dest="threads", type=int, help="Worker threads")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="Errors only")
    return common


def _design_parser() -> argparse.ArgumentParser:
    design = argparse.ArgumentParser(add_help=False)
    design.add_argument("--reps", type=int, help="Replications (default 1000)")
    design.add_argument("--seed", type=int, help="Root seed (default 0)")
    design.add_argument("--fixed-design", dest="fixed_design", action="store_true", default=None,
                        help="Hold coefficients and regressors fixed across replications")
    return design


def _panel_shape(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--N", type=int, help="Units")
    parser.add_argument("--T", type=int, help="Periods")
    parser.add_argument("--p", type=int, help="Regressors including the intercept")
    parser.add_argument("--null", choices=[e.value for e in ErrorProcess], help="Error process")
    parser.add_argument("--dist", choices=[e.value for e in Innovation], help="Innovation distribution")


def build_parser() -> argparse.ArgumentParser:
    common, design = _common_parser(), _design_parser()
    parser = argparse.ArgumentParser(prog="crossdep", description="Cross-sectional independence tests for panels")
    sub = parser.add_subparsers(dest="command", required=True)

    test = sub.add_parser("test", parents=[common], help="Test a CSV panel")
    test.add_argument("--input", help="Long-format CSV: unit,time,y,x1,...")
    test.add_argument("--no-intercept", dest="no_intercept", action="store_true", default=None,
                      help="Do not prepend a constant regressor")
    test.add_argument("--summary", action="store_true", help="Print a digest of the residual correlations")

    simulate = sub.add_parser("simulate", parents=[common, design], help="Run one Monte Carlo experiment")
    _panel_shape(simulate)
    simulate.add_argument("--alt", help="none, sma, sparse or density:K")
    simulate.add_argument("--delta", type=float, help="SMA strength (default 0.2)")

    table = sub.add_parser("table", parents=[common, design], help="Size/power table cells")
    table.add_argument("--table", type=int, required=True, choices=sorted(TABLE_ALTERNATIVES))
    scope = table.add_mutually_exclusive_group(required=True)
    scope.add_argument("--cell", help="e.g. N=100,T=200,p=3,dist=normal,proc=ar1")
    scope.add_argument("--grid", action="store_true", help="Every cell of the table")

    sweep = sub.add_parser("sweep", parents=[common, design], help="Power over the density support size")
    _panel_shape(sweep)
    sweep.add_argument("--k", help="Comma-separated support sizes (default 2..16)")
    return parser


def _configure_logging(args: argparse.Namespace) -> None:
    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr, force=True)


def _options(args: argparse.Namespace) -> Dict[str, Any]:
    file_values = load_config_file(args.config) if args.config else {}
    skip = {"command", "config", "verbose", "quiet", "summary", "cell", "grid", "table", "k"}
    flags = {k: v for k, v in vars(args).items() if k not in skip}
    return merge_options(file_values, flags)


def parse_cell(text: str) -> Dict[str, str]:
    """``N=100,T=200,...`` to option values."""
    values = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, sep, value = part.partition("=")
        if not sep or key.strip() not in CELL_KEYS:
            raise ConfigError(f"Bad cell entry {part!r}; expected keys {', '.join(CELL_KEYS)}")
        values[CELL_KEYS[key.strip()]] = value.strip()
    return values


def _cmd_test(args: argparse.Namespace, options: Dict[str, Any]) -> str:
    settings = run_settings(options)
    if not options.get("input"):
        raise ConfigError("test needs --input (or input= in the config file)")
    data = load_panel_csv(options["input"], intercept=settings.intercept)
    records = run_tests(
        data, alpha=settings.alpha, nu=settings.nu, comparators=settings.comparators, workers=settings.threads
    )
    output = format_records(records, settings.format)
    if args.summary:
        summary = summarize_correlations(residual_correlations(build_residuals(data)))
        output += format_correlation_summary(summary)
    return output


def _cmd_simulate(args: argparse.Namespace, options: Dict[str, Any]) -> str:
    settings = run_settings(options)
    report = run_monte_carlo(mc_config(options), workers=settings.threads)
    return format_mc_report(report, settings.format)


def _cmd_table(args: argparse.Namespace, options: Dict[str, Any]) -> str:
    settings = run_settings(options)
    alternative = TABLE_ALTERNATIVES[args.table].value
    if args.grid:
        base = mc_config(options, alternative=TABLE_ALTERNATIVES[args.table])
        rows = run_table_grid(
            args.table,
            workers=settings.threads,
            reps=base.reps,
            alpha=base.alpha,
            seed=base.seed,
            nu=base.nu,
            fixed_design=base.fixed_design,
            extended_comparators=base.extended_comparators,
        )
        return format_table(rows, settings.format)
    cell = merge_options(options, {**parse_cell(args.cell), "alt": alternative})
    report = run_monte_carlo(mc_config(cell), workers=settings.threads)
    return format_mc_report(report, settings.format)


def _cmd_sweep(args: argparse.Namespace, options: Dict[str, Any]) -> str:
    settings = run_settings(options)
    try:
        k_values = [int(k) for k in args.k.split(",")] if args.k else list(DEFAULT_K_VALUES)
    except ValueError as exc:
        raise ConfigError(f"Bad --k list {args.k!r}") from exc
    base = mc_config(options)
    points = run_density_sweep(base, k_values, workers=settings.threads)
    return format_sweep(points, settings.format)


COMMANDS = {
    "test": _cmd_test,
    "simulate": _cmd_simulate,
    "table": _cmd_table,
    "sweep": _cmd_sweep,
}


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code or 0)
    _configure_logging(args)

    try:
        output = COMMANDS[args.command](args, _options(args))
    except CrossDepError as exc:
        sys.stderr.write(f"crossdep: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    sys.stdout.write(output)
    return 0


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
