"""
Normal and chi-square distribution functions used to calibrate the tests.

Thin, domain-checked wrappers over ``scipy.stats``. Upper-tail probabilities
go through survival functions so that tiny p-values keep their precision.
"""

import math

import numpy as np
from scipy import stats

from ..exceptions import DomainError


def _check_probability(p: float) -> None:
    if not (0.0 < p < 1.0) or math.isnan(p):
        raise DomainError(f"Probability must lie in (0, 1), got {p}")


def _check_df(df: float) -> None:
    if df < 1 or int(df) != df:
        raise DomainError(f"Degrees of freedom must be an integer >= 1, got {df}")


def std_normal_cdf(x: float) -> float:
    """Standard normal CDF Φ(x)."""
    return float(stats.norm.cdf(x))


def std_normal_sf(x: float) -> float:
    """Standard normal upper tail 1 − Φ(x)."""
    return float(stats.norm.sf(x))


def std_normal_quantile(p: float) -> float:
    """Inverse of Φ on (0, 1)."""
    _check_probability(p)
    return float(stats.norm.ppf(p))


def chi2_cdf(x: float, df: int) -> float:
    """Chi-square CDF via the regularized lower incomplete gamma function."""
    _check_df(df)
    if x < 0:
        raise DomainError(f"chi2_cdf requires x >= 0, got {x}")
    return float(stats.chi2.cdf(x, df))


def chi2_sf(x: float, df: int) -> float:
    """Chi-square upper tail probability."""
    _check_df(df)
    if x < 0:
        raise DomainError(f"chi2_sf requires x >= 0, got {x}")
    return float(stats.chi2.sf(x, df))


def chi2_quantile(p: float, df: int) -> float:
    """Inverse chi-square CDF."""
    _check_probability(p)
    _check_df(df)
    return float(stats.chi2.ppf(p, df))


def chi2_df4_sf(x: float) -> float:
    """Closed-form upper tail of χ²₄: e^{−x/2}(1 + x/2)."""
    if x < 0:
        raise DomainError(f"chi2_df4_sf requires x >= 0, got {x}")
    half = 0.5 * x
    return float(np.exp(-half) * (1.0 + half))


def chi2_df4_cdf(x: float) -> float:
    """Closed-form χ²₄ CDF: 1 − e^{−x/2}(1 + x/2)."""
    if x < 0:
        raise DomainError(f"chi2_df4_cdf requires x >= 0, got {x}")
    # expm1 keeps precision near zero
    half = 0.5 * x
    return float(-np.expm1(-half) - half * np.exp(-half))
