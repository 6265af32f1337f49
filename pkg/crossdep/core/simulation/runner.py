"""
Monte Carlo runner: empirical size and power of every test.

Each replication draws from its own random streams, so results do not depend
on the number of workers or on the order replications are scheduled in.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from ..distributions import Innovation
from ..exceptions import CrossDepError
from ..independence import (
    TestMethod,
    TestOutcome,
    cd_p_test,
    combined_test,
    lm_bp_test,
    lm_fjlx_test,
    lm_puy_test,
    max_test,
    sum_test,
)
from ..panel import build_residuals, residual_correlations
from .dgp import generate_panel
from .models import (
    AlternativeKind,
    ErrorProcess,
    McConfig,
    McReport,
    MethodSummary,
    ReplicationResult,
    SweepPoint,
    TableRow,
)

logger = logging.getLogger(__name__)

# Alternative used by each size/power table.
TABLE_ALTERNATIVES = {
    1: AlternativeKind.NULL,
    2: AlternativeKind.SMA,
    3: AlternativeKind.SPARSE,
}

DEFAULT_PROCESSES = (ErrorProcess.AR1, ErrorProcess.ARMA11)
DEFAULT_INNOVATIONS = (Innovation.NORMAL, Innovation.T6, Innovation.CHI5)
DEFAULT_N_VALUES = (100, 200)
DEFAULT_T_VALUES = (200, 300, 400, 500)
DEFAULT_P_VALUES = (3, 5)
DEFAULT_K_VALUES = tuple(range(2, 17))


def simulate_replication(config: McConfig, rep: int) -> ReplicationResult:
    """Generate replication ``rep`` and run every configured test on it.

    A method that cannot be computed is recorded under ``failures`` with the
    error message; methods depending on it (T_C on S_N and L_N) fail with it.
    """
    result = ReplicationResult(rep=rep)
    methods = config.methods

    try:
        data, model = generate_panel(config, rep)
        result.psi_repaired = model.psi_repaired
        resids = build_residuals(data)
        corr = residual_correlations(resids)
    except CrossDepError as exc:
        logger.warning(f"Replication {rep} failed before testing: {exc}")
        result.failures = {method: str(exc) for method in methods}
        return result

    t = resids.n_periods
    runners: Dict[TestMethod, Callable[[], TestOutcome]] = {
        TestMethod.SN: lambda: sum_test(resids, config.alpha, corr=corr),
        TestMethod.LN: lambda: max_test(resids, config.alpha, config.nu, corr=corr),
        TestMethod.LM_PUY: lambda: lm_puy_test(resids, config.alpha, corr=corr),
        TestMethod.CD_P: lambda: cd_p_test(corr, t, config.alpha),
        TestMethod.LM_BP: lambda: lm_bp_test(corr, t, config.alpha),
        TestMethod.LM_FJLX: lambda: lm_fjlx_test(resids, config.alpha, corr=corr),
    }
    for method in methods:
        if method is TestMethod.TC:
            continue
        try:
            result.outcomes[method] = runners[method]()
        except CrossDepError as exc:
            logger.warning(f"Replication {rep}: {method.value} failed: {exc}")
            result.failures[method] = str(exc)

    if TestMethod.TC in methods:
        missing = [m for m in (TestMethod.LN, TestMethod.SN) if m in result.failures]
        if missing:
            result.failures[TestMethod.TC] = f"depends on failed {missing[0].value}"
        else:
            result.outcomes[TestMethod.TC] = combined_test(
                result.outcomes[TestMethod.LN], result.outcomes[TestMethod.SN], config.alpha
            )
    return result


def summarize_replications(config: McConfig, results: Sequence[ReplicationResult]) -> Dict[TestMethod, MethodSummary]:
    summaries = {}
    for method in config.methods:
        outcomes = [r.outcomes[method] for r in results if method in r.outcomes]
        summaries[method] = MethodSummary(
            method=method,
            rejections=sum(o.reject for o in outcomes),
            completed=len(outcomes),
            failures=sum(method in r.failures for r in results),
        )
    return summaries


def run_monte_carlo(
    config: McConfig,
    workers: Optional[int] = None,
    keep_replications: bool = False,
) -> McReport:
    """Run ``config.reps`` replications and aggregate rejection rates.

    Args:
        config: Experiment definition
        workers: Size of the thread pool (None or 1 = serial)
        keep_replications: Retain every per-replication outcome in the report

    Returns:
        McReport with one MethodSummary per method
    """
    logger.info(
        f"Monte Carlo: N={config.n_units}, T={config.n_periods}, p={config.n_regressors}, "
        f"{config.error_process.value}/{config.innovation.value}, "
        f"alternative={config.alternative.value}, reps={config.reps}"
    )
    step = max(1, config.reps // 10)

    def _run(rep: int) -> ReplicationResult:
        result = simulate_replication(config, rep)
        if (rep + 1) % step == 0:
            logger.debug(f"Replication {rep + 1}/{config.reps} done")
        return result

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run, range(config.reps)))
    else:
        results = [_run(rep) for rep in range(config.reps)]

    summaries = summarize_replications(config, results)
    psi_repairs = sum(r.psi_repaired for r in results)
    if psi_repairs:
        logger.info(f"Psi eigen-repair applied in {psi_repairs} of {config.reps} replications")
    failed = sum(bool(r.failures) for r in results)
    if failed:
        logger.warning(f"{failed} of {config.reps} replications had at least one failed method")

    return McReport(
        config=config,
        summaries=summaries,
        reps_completed=config.reps - failed,
        psi_repairs=psi_repairs,
        replications=results if keep_replications else None,
    )


def run_density_sweep(
    base: McConfig,
    k_values: Iterable[int] = DEFAULT_K_VALUES,
    workers: Optional[int] = None,
) -> List[SweepPoint]:
    """Power of every method as the density support size k grows."""
    points = []
    for k in k_values:
        config = McConfig(
            **{**base.model_dump(), "alternative": AlternativeKind.DENSITY, "density_k": k}
        )
        report = run_monte_carlo(config, workers=workers)
        for method, summary in report.summaries.items():
            points.append(
                SweepPoint(
                    k=k,
                    method=method,
                    rejection_rate=summary.rejection_rate,
                    mc_std_error=summary.mc_std_error,
                )
            )
    return points


def table_cell_config(
    table: int,
    n_units: int,
    n_periods: int,
    n_regressors: int,
    error_process: ErrorProcess = ErrorProcess.AR1,
    innovation: Innovation = Innovation.NORMAL,
    **overrides: object,
) -> McConfig:
    """McConfig of one cell of size table 1, SMA power table 2, or sparse power table 3."""
    if table not in TABLE_ALTERNATIVES:
        raise ValueError(f"Unknown table {table}; expected one of {sorted(TABLE_ALTERNATIVES)}")
    return McConfig(
        n_units=n_units,
        n_periods=n_periods,
        n_regressors=n_regressors,
        error_process=error_process,
        innovation=innovation,
        alternative=TABLE_ALTERNATIVES[table],
        **overrides,
    )


def run_table_grid(
    table: int,
    processes: Iterable[ErrorProcess] = DEFAULT_PROCESSES,
    innovations: Iterable[Innovation] = DEFAULT_INNOVATIONS,
    n_values: Iterable[int] = DEFAULT_N_VALUES,
    t_values: Iterable[int] = DEFAULT_T_VALUES,
    p_values: Iterable[int] = DEFAULT_P_VALUES,
    workers: Optional[int] = None,
    **overrides: object,
) -> List[TableRow]:
    """Every cell of a size/power table, one row per (cell, method)."""
    rows = []
    for process in processes:
        for innovation in innovations:
            for p in p_values:
                for n in n_values:
                    for t in t_values:
                        config = table_cell_config(table, n, t, p, process, innovation, **overrides)
                        report = run_monte_carlo(config, workers=workers)
                        for method, summary in report.summaries.items():
                            rows.append(
                                TableRow(
                                    table=table,
                                    error_process=process,
                                    innovation=innovation,
                                    n_units=n,
                                    n_periods=t,
                                    n_regressors=p,
                                    method=method,
                                    rejection_rate=summary.rejection_rate,
                                    mc_std_error=summary.mc_std_error,
                                )
                            )
    return rows
