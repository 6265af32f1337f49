"""
True-covariance quantities of the simulation designs.

Used to check the estimators against what they estimate: the exact column
covariance Σ of the error recursion, the scaling ratio it implies, and the
null variance of S_N given the fitted projections.
"""

from typing import Callable, Union

import numpy as np
from scipy import stats

from ..exceptions import DimensionMismatch, ZeroMatrix
from .dgp import impulse_response_matrix
from .models import ArmaSpec, ErrorProcess


def sigma_oracle(process: Union[ErrorProcess, ArmaSpec], n_periods: int) -> np.ndarray:
    """Exact finite-sample Σ = LL' of one error row, L the impulse-response map."""
    lower = impulse_response_matrix(process, n_periods)
    return lower @ lower.T


def true_scaling_ratio(sigma: np.ndarray) -> float:
    """tr²(Σ)/‖Σ‖²_F."""
    frob = float(np.sum(sigma * sigma))
    if frob <= 0.0:
        raise ZeroMatrix("Column covariance is the zero matrix")
    trace = float(np.trace(sigma))
    return trace * trace / frob


def projected_sigmas(sigma: np.ndarray, bases: np.ndarray) -> np.ndarray:
    """M_i = P_iΣP_i for every unit, with P_i = I − Q_iQ_i'.

    Returns:
        ``(N, T, T)`` stack of M_i
    """
    t = sigma.shape[0]
    if bases.ndim != 3 or bases.shape[1] != t:
        raise DimensionMismatch(f"bases must be N x {t} x p, got shape {bases.shape}")
    qt_sigma = np.einsum("itp,ts->ips", bases, sigma)
    b_sigma = np.einsum("itp,ips->its", bases, qt_sigma)
    core = np.einsum("ips,isq->ipq", qt_sigma, bases)
    b_sigma_b = np.einsum("itp,ipq,isq->its", bases, core, bases, optimize=True)
    m = sigma[None, :, :] - b_sigma - np.transpose(b_sigma, (0, 2, 1)) + b_sigma_b
    return 0.5 * (m + np.transpose(m, (0, 2, 1)))


def oracle_sigma2_sn(sigma: np.ndarray, bases: np.ndarray) -> float:
    """σ²_{S_N} = 2/(N(N−1)) Σ_{i<j} tr(M_iM_j) / (tr(M_i) tr(M_j))."""
    m = projected_sigmas(sigma, bases)
    n = m.shape[0]
    flat = m.reshape(n, -1)
    cross = flat @ flat.T
    traces = np.einsum("itt->i", m)
    iu = np.triu_indices(n, k=1)
    ratios = cross[iu] / (traces[iu[0]] * traces[iu[1]])
    return float(2.0 / (n * (n - 1)) * np.sum(ratios))


def ks_distance(sample: np.ndarray, cdf: Union[str, Callable[..., np.ndarray]], *args: float) -> float:
    """One-sample Kolmogorov-Smirnov distance of ``sample`` to ``cdf``."""
    return float(stats.kstest(np.asarray(sample, dtype=float), cdf, args=args).statistic)
