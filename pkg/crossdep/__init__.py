"""
crossdep - cross-sectional independence tests for heterogeneous panels.

Sum-based, max-based and Fisher-combined tests that stay valid when the
errors are serially correlated, classical LM/CD baselines, and a Monte Carlo
harness for their size and power.
"""

__version__ = "0.1.0"

__all__ = [
    "CrossDepError",
    "PanelDataset",
    "ReportRecord",
    "TestMethod",
    "TestOutcome",
    "build_residuals",
    "combined_test",
    "load_panel_csv",
    "max_test",
    "residual_correlations",
    "run_tests",
    "sum_test",
]

from .core.exceptions import CrossDepError
from .core.independence import TestMethod, TestOutcome, combined_test, max_test, sum_test
from .core.panel import PanelDataset, build_residuals, residual_correlations
from .services import ReportRecord, load_panel_csv, run_tests
