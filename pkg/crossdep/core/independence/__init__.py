"""
Cross-sectional independence tests for panels with serially correlated errors.

The sum-based test targets dense alternatives, the max-based test sparse ones,
and Fisher's combination is robust to both. Classical LM/CD tests are kept as
baselines.
"""

__all__ = [
    "Alternative",
    "CovEstimate",
    "GumbelCalibration",
    "TestMethod",
    "TestOutcome",
    "cd_p_test",
    "column_sample_cov",
    "combined_test",
    "compute_ln",
    "compute_p_hat",
    "compute_sn",
    "compute_u_hat",
    "estimate_column_cov",
    "estimate_sigma2_sn",
    "fisher_combine",
    "gumbel_cdf",
    "gumbel_critical",
    "lm_bp_test",
    "lm_fjlx_test",
    "lm_puy_test",
    "max_test",
    "scaling_ratio",
    "sum_test",
    "threshold_cov",
]

from .combined import combined_test, fisher_combine
from .comparators import cd_p_test, lm_bp_test, lm_fjlx_test, lm_puy_test
from .max_test import (
    column_sample_cov,
    compute_ln,
    compute_p_hat,
    compute_u_hat,
    estimate_column_cov,
    gumbel_cdf,
    gumbel_critical,
    max_test,
    scaling_ratio,
    threshold_cov,
)
from .models import Alternative, CovEstimate, GumbelCalibration, TestMethod, TestOutcome
from .sum_test import compute_sn, estimate_sigma2_sn, sum_test
