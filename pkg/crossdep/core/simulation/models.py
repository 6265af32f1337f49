"""
Data models for the Monte Carlo harness.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..distributions import Innovation
from ..independence.models import TestMethod, TestOutcome


@dataclass(frozen=True)
class ArmaSpec:
    """ε_t = ar·ε_{t−1} + e_t + ma·e_{t−1}, started at ε_1 = e_1."""

    ar: float
    ma: float = 0.0


class ErrorProcess(str, Enum):
    """Serial-correlation settings of the error rows."""
    AR1 = "ar1"
    ARMA11 = "arma11"
    IID = "iid"

    @property
    def spec(self) -> ArmaSpec:
        return {
            ErrorProcess.AR1: ArmaSpec(ar=0.6),
            ErrorProcess.ARMA11: ArmaSpec(ar=0.6, ma=0.2),
            ErrorProcess.IID: ArmaSpec(ar=0.0),
        }[self]


class AlternativeKind(str, Enum):
    """Cross-sectional structure imposed on the errors."""
    NULL = "null"
    SMA = "sma"
    SPARSE = "sparse"
    DENSITY = "density"


class McConfig(BaseModel):
    """One Monte Carlo experiment."""

    model_config = ConfigDict(frozen=True)

    n_units: int = Field(100, ge=4, description="N")
    n_periods: int = Field(200, ge=2, description="T")
    n_regressors: int = Field(3, ge=1, description="p, intercept included")
    error_process: ErrorProcess = Field(ErrorProcess.AR1, description="Serial correlation of errors")
    innovation: Innovation = Field(Innovation.NORMAL, description="Innovation distribution")
    alternative: AlternativeKind = Field(AlternativeKind.NULL, description="Cross-sectional design")
    delta: float = Field(0.2, description="SMA(1) strength")
    density_k: Optional[int] = Field(None, description="Support size of the density design")
    reps: int = Field(1000, ge=1, description="Number of replications")
    alpha: float = Field(0.05, gt=0.0, lt=1.0, description="Significance level")
    seed: int = Field(0, ge=0, description="Root seed of every replication stream")
    nu: float = Field(1.42, gt=0.0, description="Thresholding constant of the max test")
    fixed_design: bool = Field(False, description="Hold coefficients and regressors fixed across replications")
    extended_comparators: bool = Field(False, description="Also run LM_BP and LM_FJLX")

    @model_validator(mode="after")
    def check_design(self) -> "McConfig":
        if self.n_periods <= self.n_regressors:
            raise ValueError(f"Need T > p, got T={self.n_periods}, p={self.n_regressors}")
        if self.alternative is AlternativeKind.DENSITY:
            if self.density_k is None or not (2 <= self.density_k <= self.n_units):
                raise ValueError(f"density design needs 2 <= k <= N, got k={self.density_k}")
        return self

    @property
    def methods(self) -> List[TestMethod]:
        methods = [TestMethod.SN, TestMethod.LN, TestMethod.TC, TestMethod.LM_PUY, TestMethod.CD_P]
        if self.extended_comparators:
            methods += [TestMethod.LM_BP, TestMethod.LM_FJLX]
        return methods


@dataclass(frozen=True)
class ErrorFactorModel:
    """Kronecker-structured errors: rows mixed by ``row_map``, columns by ``sigma_map``.

    The error matrix is ``row_map @ E @ sigma_map.T`` for iid innovations E, so the
    row covariance is ``row_map @ row_map.T`` and the column covariance ``Σ = LL'``.
    """

    row_map: Optional[np.ndarray]
    sigma_map: np.ndarray
    psi_repaired: bool = False

    @property
    def u_matrix(self) -> np.ndarray:
        if self.row_map is None:
            raise ValueError("Identity row map has no materialized U; use np.eye(N)")
        return self.row_map @ self.row_map.T

    @property
    def sigma(self) -> np.ndarray:
        return self.sigma_map @ self.sigma_map.T


class ReplicationResult(BaseModel):
    """Every test outcome of one replication, or why a method failed."""

    rep: int
    outcomes: Dict[TestMethod, TestOutcome] = Field(default_factory=dict)
    failures: Dict[TestMethod, str] = Field(default_factory=dict)
    psi_repaired: bool = False


class MethodSummary(BaseModel):
    """Rejection frequency of one method across replications."""

    method: TestMethod
    rejections: int
    completed: int
    failures: int

    @property
    def rejection_rate(self) -> float:
        return self.rejections / self.completed if self.completed else float("nan")

    @property
    def mc_std_error(self) -> float:
        r = self.rejection_rate
        return math.sqrt(r * (1.0 - r) / self.completed) if self.completed else float("nan")


class McReport(BaseModel):
    """Aggregated rejection rates of a Monte Carlo experiment."""

    config: McConfig
    summaries: Dict[TestMethod, MethodSummary]
    reps_completed: int = Field(..., description="Replications in which every method completed")
    psi_repairs: int = 0
    replications: Optional[List[ReplicationResult]] = None

    def rate(self, method: TestMethod) -> float:
        return self.summaries[method].rejection_rate

    def statistics(self, method: TestMethod) -> np.ndarray:
        """Per-replication statistics (requires ``keep_replications``)."""
        if self.replications is None:
            raise ValueError("Replications were not retained; rerun with keep_replications=True")
        return np.array(
            [r.outcomes[method].statistic for r in self.replications if method in r.outcomes]
        )


class SweepPoint(BaseModel):
    """One point of a power curve over the density parameter k."""

    k: int
    method: TestMethod
    rejection_rate: float
    mc_std_error: float


class TableRow(BaseModel):
    """One cell of a size/power table."""

    table: int
    error_process: ErrorProcess
    innovation: Innovation
    n_units: int
    n_periods: int
    n_regressors: int
    method: TestMethod
    rejection_rate: float
    mc_std_error: float
