"""
Data models for the cross-sectional independence tests.
"""

from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Dict

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

# p-values are clamped to [P_FLOOR, 1] so that logs stay finite.
P_FLOOR = 1e-300


class TestMethod(str, Enum):
    """Tests implemented by crossdep."""
    __test__ = False

    SN = "SN"
    LN = "LN"
    TC = "TC"
    LM_BP = "LM_BP"
    LM_PUY = "LM_PUY"
    LM_FJLX = "LM_FJLX"
    CD_P = "CD_P"


class Alternative(str, Enum):
    """Tail used by a test's rejection rule."""
    GREATER = "greater"
    TWO_SIDED = "two-sided"


class TestOutcome(BaseModel):
    """Statistic, p-value, and decision of a single test."""

    model_config = ConfigDict(frozen=True, use_enum_values=False)
    __test__: ClassVar[bool] = False

    method: TestMethod = Field(..., description="Which test produced this outcome")
    statistic: float = Field(..., description="Value of the test statistic")
    p_value: float = Field(..., description="p-value, clamped to [P_FLOOR, 1]")
    alpha: float = Field(..., gt=0.0, lt=1.0, description="Significance level")
    reject: bool = Field(..., description="Whether the null of independence is rejected")
    alternative: Alternative = Field(Alternative.GREATER, description="Rejection tail")
    aux: Dict[str, float] = Field(
        default_factory=dict,
        description="Named intermediate quantities (critical_value, sigma2_hat, ...)",
    )

    @field_validator("p_value")
    @classmethod
    def clamp_p_value(cls, v: float) -> float:
        """Clamp into [P_FLOOR, 1]; NaN is never a valid p-value."""
        if np.isnan(v):
            raise ValueError("p-value is NaN")
        return float(min(max(v, P_FLOOR), 1.0))

    @model_validator(mode="after")
    def statistic_is_finite(self) -> "TestOutcome":
        if np.isnan(self.statistic):
            raise ValueError(f"{self.method.value} statistic is NaN")
        return self


@dataclass(frozen=True)
class CovEstimate:
    """Column covariance Σ̂, its thresholded version Σ̃, and the derived scaling ratio."""

    sigma_hat: np.ndarray
    sigma_tilde: np.ndarray
    p_hat_n: float
    scaling_ratio: float
    nu: float

    @property
    def t(self) -> int:
        return int(self.sigma_hat.shape[0])

    @property
    def kept_fraction(self) -> float:
        """Share of off-diagonal entries surviving the threshold."""
        t = self.t
        if t < 2:
            return 1.0
        off = ~np.eye(t, dtype=bool)
        return float(np.mean(self.sigma_tilde[off] != 0.0))


@dataclass(frozen=True)
class GumbelCalibration:
    """Critical value of the max test at level alpha for N units."""

    alpha: float
    w_alpha: float
    centering: float
