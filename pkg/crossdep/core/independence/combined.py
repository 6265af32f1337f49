"""
Fisher's combination of the max- and sum-test p-values.

The two statistics are asymptotically independent, so T_C is χ²₄ under the null.
"""

import math

from ..distributions import chi2_df4_sf, chi2_quantile
from ..exceptions import DomainError
from .models import P_FLOOR, Alternative, TestMethod, TestOutcome


def fisher_combine(p_l: float, p_s: float) -> float:
    """T_C = −2 log p_l − 2 log p_s, with inputs clamped below at 1e−300.

    Raises:
        DomainError: If either p-value is outside (0, 1]
    """
    for name, p in (("p_l", p_l), ("p_s", p_s)):
        if not (0.0 < p <= 1.0):
            raise DomainError(f"{name} must lie in (0, 1], got {p}")
    return -2.0 * math.log(max(p_l, P_FLOOR)) - 2.0 * math.log(max(p_s, P_FLOOR))


def combined_test(max_out: TestOutcome, sum_out: TestOutcome, alpha: float = 0.05) -> TestOutcome:
    """Reject when T_C ≥ q_α, the (1−α)-quantile of χ²₄."""
    if max_out.method is not TestMethod.LN or sum_out.method is not TestMethod.SN:
        raise DomainError(
            f"combined_test expects (LN, SN) outcomes, got ({max_out.method.value}, {sum_out.method.value})"
        )
    statistic = fisher_combine(max_out.p_value, sum_out.p_value)
    q_alpha = chi2_quantile(1.0 - alpha, 4)
    return TestOutcome(
        method=TestMethod.TC,
        statistic=statistic,
        p_value=chi2_df4_sf(statistic),
        alpha=alpha,
        reject=bool(statistic >= q_alpha),
        alternative=Alternative.GREATER,
        aux={"p_l": max_out.p_value, "p_s": sum_out.p_value, "critical_value": q_alpha},
    )
