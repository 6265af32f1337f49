"""
Classical cross-sectional dependence tests used as baselines.

These assume serially uncorrelated errors; under AR/ARMA errors they over-reject.
LM_BP, LM_PUY and LM_FJLX reject in the upper tail, CD_P is two-sided.
"""

from typing import Optional, Tuple

import numpy as np

from ..distributions import chi2_sf, std_normal_quantile, std_normal_sf
from ..exceptions import DomainError, SmallSample
from ..panel.correlation import CorrMatrix, residual_correlations
from ..panel.models import ResidualSet
from ..panel.ols import pairwise_traces
from .models import Alternative, TestMethod, TestOutcome


def _check_units(corr: CorrMatrix) -> int:
    if corr.n < 2:
        raise DomainError(f"Need N >= 2 units, got {corr.n}")
    return corr.n


def lm_bp_test(corr: CorrMatrix, n_periods: int, alpha: float = 0.05) -> TestOutcome:
    """LM_BP = T Σ_{i<j} ρ̂²_ij against χ² with N(N−1)/2 degrees of freedom."""
    n = _check_units(corr)
    upper = corr.upper()
    statistic = float(n_periods * np.sum(upper * upper))
    df = n * (n - 1) // 2
    p_value = chi2_sf(statistic, df)
    return TestOutcome(
        method=TestMethod.LM_BP,
        statistic=statistic,
        p_value=p_value,
        alpha=alpha,
        reject=bool(p_value < alpha),
        alternative=Alternative.GREATER,
        aux={"df": float(df)},
    )


def cd_p_test(corr: CorrMatrix, n_periods: int, alpha: float = 0.05) -> TestOutcome:
    """CD_P = sqrt(2T/(N(N−1))) Σ_{i<j} ρ̂_ij, two-sided normal."""
    n = _check_units(corr)
    statistic = float(np.sqrt(2.0 * n_periods / (n * (n - 1))) * corr.upper().sum())
    p_value = min(1.0, 2.0 * std_normal_sf(abs(statistic)))
    return TestOutcome(
        method=TestMethod.CD_P,
        statistic=statistic,
        p_value=p_value,
        alpha=alpha,
        reject=bool(p_value < alpha),
        alternative=Alternative.TWO_SIDED,
    )


def puy_moments(dof: int) -> Tuple[float, float]:
    """(a_1T, a_2T) of the bias-adjusted LM test for dof = T − p."""
    if dof <= 4:
        raise SmallSample(f"LM_PUY needs T - p > 4, got {dof}")
    a2 = 3.0 * (((dof - 8) * (dof + 2) + 24) / ((dof + 2) * (dof - 2) * (dof - 4))) ** 2
    a1 = a2 - 1.0 / dof**2
    return a1, a2


def lm_puy_test(
    resids: ResidualSet,
    alpha: float = 0.05,
    corr: Optional[CorrMatrix] = None,
) -> TestOutcome:
    """Bias-adjusted LM test with realized projection traces in place of expectations.

    Statistic: sqrt(2/(N(N−1))) Σ_{i<j} [(T−p)ρ̂²_ij − μ_Tij]/v_Tij with
    μ_Tij = tr(P_iP_j)/(T−p) and v²_Tij = tr²(P_iP_j) a_1T + 2 tr((P_iP_j)²) a_2T.
    """
    if corr is None:
        corr = residual_correlations(resids)
    n = _check_units(corr)
    dof = resids.n_periods - resids.n_regressors
    a1, a2 = puy_moments(dof)
    tr1, tr2 = pairwise_traces(resids)
    iu = np.triu_indices(n, k=1)
    tr1, tr2 = tr1[iu], tr2[iu]
    rho = corr.upper()

    mu = tr1 / dof
    v = np.sqrt(tr1 * tr1 * a1 + 2.0 * tr2 * a2)
    statistic = float(np.sqrt(2.0 / (n * (n - 1))) * np.sum((dof * rho * rho - mu) / v))
    p_value = std_normal_sf(statistic)
    return TestOutcome(
        method=TestMethod.LM_PUY,
        statistic=statistic,
        p_value=p_value,
        alpha=alpha,
        reject=bool(statistic > std_normal_quantile(1.0 - alpha)),
        alternative=Alternative.GREATER,
        aux={"a_1T": a1, "a_2T": a2},
    )


def lm_fjlx_test(
    resids: ResidualSet,
    alpha: float = 0.05,
    corr: Optional[CorrMatrix] = None,
) -> TestOutcome:
    """LM_FJLX = [Σ_{i<j} T ρ̂²_ij − μ_N] / N, μ_N = T/(T−p)² Σ_{i<j} tr(P_iP_j)."""
    if corr is None:
        corr = residual_correlations(resids)
    n = _check_units(corr)
    t, p = resids.n_periods, resids.n_regressors
    if t <= p:
        raise SmallSample(f"LM_FJLX needs T > p, got T={t}, p={p}")
    tr1, _ = pairwise_traces(resids)
    iu = np.triu_indices(n, k=1)
    mu_n = t / (t - p) ** 2 * float(np.sum(tr1[iu]))
    rho = corr.upper()
    statistic = float((t * np.sum(rho * rho) - mu_n) / n)
    p_value = std_normal_sf(statistic)
    return TestOutcome(
        method=TestMethod.LM_FJLX,
        statistic=statistic,
        p_value=p_value,
        alpha=alpha,
        reject=bool(statistic > std_normal_quantile(1.0 - alpha)),
        alternative=Alternative.GREATER,
        aux={"mu_n": mu_n},
    )
