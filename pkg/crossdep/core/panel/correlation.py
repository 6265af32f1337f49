"""
Residual cross-correlations shared by every test.
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from ..exceptions import DegenerateResidual, DimensionMismatch, NumericalError
from .models import ResidualSet

logger = logging.getLogger(__name__)

CLIP_TOL = 1e-12


@dataclass(frozen=True)
class CorrMatrix:
    """Symmetric N x N matrix of residual correlations with unit diagonal."""

    rho: np.ndarray

    def __post_init__(self) -> None:
        rho = np.asarray(self.rho, dtype=float)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise DimensionMismatch(f"Correlation matrix must be square, got {rho.shape}")
        object.__setattr__(self, "rho", rho)

    @property
    def n(self) -> int:
        return int(self.rho.shape[0])

    def upper(self) -> np.ndarray:
        """Entries ρ̂_ij for i < j, row-major."""
        return self.rho[np.triu_indices(self.n, k=1)]

    @classmethod
    def from_pairs(cls, n: int, values: List[float]) -> "CorrMatrix":
        """Build from the i < j entries listed row-major."""
        rho = np.eye(n)
        iu = np.triu_indices(n, k=1)
        rho[iu] = values
        rho.T[iu] = values
        return cls(rho)


def residual_correlations(resids: ResidualSet) -> CorrMatrix:
    """ρ̂_ij = Σ_t ε̂_it ε̂_jt / sqrt(Σ_t ε̂²_it Σ_t ε̂²_jt), without demeaning.

    Raises:
        DegenerateResidual: If a unit's residual vector is zero
        NumericalError: If an entry overshoots [−1, 1] by more than 1e−12
    """
    norms = resids.resid_sq_norm
    zero = np.flatnonzero(norms <= 0.0)
    if zero.size:
        raise DegenerateResidual(
            "Residual vector is identically zero; correlation undefined",
            details={"unit": int(zero[0])},
        )
    v = resids.resid / np.sqrt(norms)[:, None]
    rho = v @ v.T
    rho = 0.5 * (rho + rho.T)

    overshoot = np.abs(rho) - 1.0
    if np.any(overshoot > CLIP_TOL):
        raise NumericalError(
            "Residual correlation outside [-1, 1]",
            details={"max_abs": float(np.max(np.abs(rho)))},
        )
    np.clip(rho, -1.0, 1.0, out=rho)
    np.fill_diagonal(rho, 1.0)
    return CorrMatrix(rho)


@dataclass(frozen=True)
class CorrelationSummary:
    """Descriptive view of the N(N−1)/2 pairwise correlations."""

    n_pairs: int
    mean: float
    mean_abs: float
    max_abs: float
    share_above: float
    threshold: float
    bin_edges: np.ndarray
    counts: np.ndarray


def summarize_correlations(corr: CorrMatrix, bins: int = 20, threshold: float = 0.1) -> CorrelationSummary:
    """Summarize pairwise correlations; many small values point to a dense alternative."""
    values = corr.upper()
    counts, edges = np.histogram(values, bins=bins, range=(-1.0, 1.0))
    abs_values = np.abs(values)
    return CorrelationSummary(
        n_pairs=int(values.size),
        mean=float(values.mean()),
        mean_abs=float(abs_values.mean()),
        max_abs=float(abs_values.max()),
        share_above=float(np.mean(abs_values > threshold)),
        threshold=threshold,
        bin_edges=edges,
        counts=counts,
    )
