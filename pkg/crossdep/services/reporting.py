"""Running the independence tests on a dataset and rendering their results."""

from __future__ import annotations

import json
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field

from crossdep.core.exceptions import CrossDepError
from crossdep.core.independence import (
    TestOutcome,
    cd_p_test,
    combined_test,
    lm_bp_test,
    lm_fjlx_test,
    lm_puy_test,
    max_test,
    sum_test,
)
from crossdep.core.independence.max_test import DEFAULT_NU
from crossdep.core.panel import CorrelationSummary, PanelDataset, build_residuals, residual_correlations
from crossdep.core.simulation import McReport, SweepPoint, TableRow

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
RECORD_COLUMNS = ["method", "statistic", "p_value", "reject", "alpha"]


class ReportRecord(BaseModel):
    """One test's result as written to a report."""

    method: str = Field(..., description="Test name (SN, LN, TC, ...)")
    statistic: float
    p_value: float
    reject: bool
    alpha: float
    aux: Dict[str, float] = Field(default_factory=dict)

    @classmethod
    def from_outcome(cls, outcome: TestOutcome) -> "ReportRecord":
        return cls(
            method=outcome.method.value,
            statistic=outcome.statistic,
            p_value=outcome.p_value,
            reject=outcome.reject,
            alpha=outcome.alpha,
            aux=dict(outcome.aux),
        )


def _tagged_run(method: str, fn: Callable[[], TestOutcome]) -> TestOutcome:
    try:
        return fn()
    except CrossDepError as exc:
        raise exc.tagged(method=method)


def run_tests(
    data: PanelDataset,
    alpha: float = 0.05,
    nu: float = DEFAULT_NU,
    comparators: bool = False,
    workers: Optional[int] = None,
) -> List[ReportRecord]:
    """S_N, L_N and T_C on one panel, plus LM_BP, LM_PUY, LM_FJLX and CD_P with ``comparators``.

    Raises:
        CrossDepError: Any failure, with ``details["method"]`` naming the test
    """
    resids = build_residuals(data, workers=workers)
    corr = residual_correlations(resids)
    t = resids.n_periods

    sn = _tagged_run("SN", lambda: sum_test(resids, alpha, corr=corr))
    ln = _tagged_run("LN", lambda: max_test(resids, alpha, nu, corr=corr))
    tc = _tagged_run("TC", lambda: combined_test(ln, sn, alpha))
    outcomes = [sn, ln, tc]
    if comparators:
        outcomes += [
            _tagged_run("LM_BP", lambda: lm_bp_test(corr, t, alpha)),
            _tagged_run("LM_PUY", lambda: lm_puy_test(resids, alpha, corr=corr)),
            _tagged_run("LM_FJLX", lambda: lm_fjlx_test(resids, alpha, corr=corr)),
            _tagged_run("CD_P", lambda: cd_p_test(corr, t, alpha)),
        ]
    for outcome in outcomes:
        logger.debug(f"{outcome.method.value}: statistic={outcome.statistic:.6g}, p={outcome.p_value:.6g}")
    return [ReportRecord.from_outcome(o) for o in outcomes]


def _render(frame: pd.DataFrame, fmt: str, extra: Optional[List[Dict[str, Any]]] = None) -> str:
    if fmt == "csv":
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    if fmt == "json":
        rows = extra if extra is not None else frame.to_dict(orient="records")
        return json.dumps(rows, indent=2, default=_json_default) + "\n"
    raise ValueError(f"Unknown format {fmt!r}; expected csv or json")


def _json_default(value: Any) -> Any:
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def format_records(records: Sequence[ReportRecord], fmt: str = "csv") -> str:
    """CSV ``method,statistic,p_value,reject,alpha`` or JSON with aux values."""
    frame = pd.DataFrame([r.model_dump(include=set(RECORD_COLUMNS)) for r in records], columns=RECORD_COLUMNS)
    frame["reject"] = frame["reject"].map({True: "true", False: "false"})
    return _render(frame, fmt, extra=[r.model_dump() for r in records])


def format_mc_report(report: McReport, fmt: str = "csv") -> str:
    """One row per method: rejection rate, Monte Carlo standard error, and counts."""
    rows = [
        {
            "method": method.value,
            "rejection_rate": summary.rejection_rate,
            "mc_std_error": summary.mc_std_error,
            "rejections": summary.rejections,
            "completed": summary.completed,
            "failures": summary.failures,
        }
        for method, summary in report.summaries.items()
    ]
    frame = pd.DataFrame(rows)
    if fmt == "json":
        payload = {
            "config": report.config.model_dump(mode="json"),
            "reps_completed": report.reps_completed,
            "psi_repairs": report.psi_repairs,
            "methods": rows,
        }
        return json.dumps(payload, indent=2, default=_json_default) + "\n"
    return _render(frame, fmt)


def format_sweep(points: Sequence[SweepPoint], fmt: str = "csv") -> str:
    frame = pd.DataFrame([p.model_dump(mode="json") for p in points])
    return _render(frame, fmt)


def format_table(rows: Sequence[TableRow], fmt: str = "csv") -> str:
    frame = pd.DataFrame([r.model_dump(mode="json") for r in rows])
    return _render(frame, fmt)


def format_correlation_summary(summary: CorrelationSummary) -> str:
    """Plain-text digest of the pairwise residual correlations."""
    lines = [
        f"pairs: {summary.n_pairs}",
        f"mean rho: {summary.mean:.4f}",
        f"mean |rho|: {summary.mean_abs:.4f}",
        f"max |rho|: {summary.max_abs:.4f}",
        f"share |rho| > {summary.threshold:g}: {summary.share_above:.4f}",
        "histogram:",
    ]
    for lo, hi, count in zip(summary.bin_edges[:-1], summary.bin_edges[1:], summary.counts):
        lines.append(f"  [{lo:+.2f}, {hi:+.2f}) {int(count)}")
    return "\n".join(lines) + "\n"
