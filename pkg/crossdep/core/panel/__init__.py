"""
Panel fitting for crossdep.

Per-unit OLS, residual bookkeeping, projection traces, and the residual
correlation matrix every test starts from.
"""

__all__ = [
    "CorrMatrix",
    "CorrelationSummary",
    "PanelDataset",
    "ResidualSet",
    "build_residuals",
    "fit_unit_ols",
    "pairwise_traces",
    "residual_correlations",
    "summarize_correlations",
    "trace_pipj",
]

from .correlation import CorrMatrix, CorrelationSummary, residual_correlations, summarize_correlations
from .models import PanelDataset, ResidualSet
from .ols import build_residuals, fit_unit_ols, pairwise_traces, trace_pipj
