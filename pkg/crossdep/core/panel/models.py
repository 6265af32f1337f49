"""
Data models for panel fitting.

Panels are balanced: every unit shares the same T-period grid, so per-unit
regressor matrices are stacked into one ``(N, T, p)`` array.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..exceptions import DimensionMismatch, DomainError


@dataclass(frozen=True)
class PanelDataset:
    """Observed responses and regressors for N units over T periods.

    Attributes:
        y: ``(N, T)`` responses
        x: ``(N, T, p)`` regressors; column 0 is the intercept when ``has_intercept``
        unit_ids: Labels of the units, in row order
        time_ids: Labels of the periods, in column order
        has_intercept: Whether column 0 of ``x`` was prepended as a constant
    """

    y: np.ndarray
    x: np.ndarray
    unit_ids: Optional[List[str]] = None
    time_ids: Optional[List[str]] = None
    has_intercept: bool = True

    def __post_init__(self) -> None:
        y = np.asarray(self.y, dtype=float)
        x = np.asarray(self.x, dtype=float)
        if y.ndim != 2:
            raise DimensionMismatch(f"y must be N x T, got shape {y.shape}")
        if x.ndim != 3 or x.shape[:2] != y.shape:
            raise DimensionMismatch(
                f"x must be N x T x p matching y {y.shape}, got shape {x.shape}"
            )
        n, t, p = x.shape
        if n < 2:
            raise DomainError(f"A panel needs at least 2 units, got {n}")
        if not (t > p >= 1):
            raise DomainError(f"Need T > p >= 1, got T={t}, p={p}")
        for values, name in ((y, "y"), (x, "x")):
            bad = np.argwhere(~np.isfinite(values))
            if bad.size:
                raise DomainError(
                    f"{name} contains a non-finite value",
                    details={"unit": int(bad[0][0]), "period": int(bad[0][1])},
                )
        for labels, expected, name in (
            (self.unit_ids, n, "unit_ids"),
            (self.time_ids, t, "time_ids"),
        ):
            if labels is not None and len(labels) != expected:
                raise DimensionMismatch(f"{name} has {len(labels)} labels, expected {expected}")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "x", x)

    @property
    def n_units(self) -> int:
        return int(self.y.shape[0])

    @property
    def n_periods(self) -> int:
        return int(self.y.shape[1])

    @property
    def n_regressors(self) -> int:
        return int(self.x.shape[2])

    def permuted(self, order: Sequence[int]) -> "PanelDataset":
        """Relabel units by ``order``."""
        idx = np.asarray(order)
        return PanelDataset(
            y=self.y[idx],
            x=self.x[idx],
            unit_ids=[self.unit_ids[i] for i in idx] if self.unit_ids else None,
            time_ids=self.time_ids,
            has_intercept=self.has_intercept,
        )


@dataclass(frozen=True)
class ResidualSet:
    """Per-unit OLS output.

    Attributes:
        resid: ``(N, T)`` residuals ε̂
        beta_hat: ``(N, p)`` coefficient estimates
        resid_sq_norm: ``(N,)`` squared residual norms ‖ε̂_i‖²
        ortho_basis: ``(N, T, p)`` orthonormal bases Q_i of col(X_i)
    """

    resid: np.ndarray
    beta_hat: np.ndarray
    resid_sq_norm: np.ndarray
    ortho_basis: np.ndarray = field(repr=False)

    @classmethod
    def from_residuals(cls, resid: np.ndarray, ortho_basis: Optional[np.ndarray] = None) -> "ResidualSet":
        """Wrap raw residual rows (e.g. synthetic errors with no panel structure).

        Without bases, each unit gets an empty projection (p = 0).
        """
        resid = np.asarray(resid, dtype=float)
        if resid.ndim != 2:
            raise DimensionMismatch(f"Residuals must be N x T, got shape {resid.shape}")
        n, t = resid.shape
        if ortho_basis is None:
            ortho_basis = np.zeros((n, t, 0))
        p = ortho_basis.shape[2]
        return cls(
            resid=resid,
            beta_hat=np.full((n, p), np.nan),
            resid_sq_norm=np.einsum("it,it->i", resid, resid),
            ortho_basis=np.asarray(ortho_basis, dtype=float),
        )

    @property
    def n_units(self) -> int:
        return int(self.resid.shape[0])

    @property
    def n_periods(self) -> int:
        return int(self.resid.shape[1])

    @property
    def n_regressors(self) -> int:
        return int(self.ortho_basis.shape[2])
