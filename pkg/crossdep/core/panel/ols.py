"""
Per-unit OLS fitting and projection-trace functionals.

Each unit is fitted through a thin QR factorization of its regressor matrix,
which yields the orthonormal basis Q_i reused by the bias-adjusted LM tests.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import solve_triangular

from ..exceptions import CrossDepError, DimensionMismatch, DomainError, RankDeficient
from .models import PanelDataset, ResidualSet

logger = logging.getLogger(__name__)

RANK_TOL = 1e-10


def fit_unit_ols(
    x_i: np.ndarray,
    y_i: np.ndarray,
    rank_tol: float = RANK_TOL,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Fit one unit by least squares.

    Args:
        x_i: ``(T, p)`` regressors
        y_i: ``(T,)`` responses
        rank_tol: Relative singular-value tolerance for full column rank

    Returns:
        ``(beta_hat, resid, q_i)`` with ``q_i`` a ``(T, p)`` orthonormal basis

    Raises:
        DimensionMismatch: If shapes disagree
        DomainError: If x or y holds inf or nan
        RankDeficient: If the smallest singular value is below ``rank_tol`` times the largest
    """
    x_i = np.asarray(x_i, dtype=float)
    y_i = np.asarray(y_i, dtype=float)
    if x_i.ndim != 2 or y_i.ndim != 1 or x_i.shape[0] != y_i.shape[0]:
        raise DimensionMismatch(
            f"Expected x (T, p) and y (T,), got {x_i.shape} and {y_i.shape}"
        )
    if not (np.isfinite(x_i).all() and np.isfinite(y_i).all()):
        raise DomainError("Regressors and responses must be finite")
    t, p = x_i.shape
    if p > t:
        raise RankDeficient(f"p={p} regressors exceed T={t} periods")

    singular = np.linalg.svd(x_i, compute_uv=False)
    if singular[0] == 0.0 or singular[-1] <= rank_tol * singular[0]:
        raise RankDeficient(
            "Regressor matrix is not of full column rank",
            details={"condition": float(singular[0] / singular[-1]) if singular[-1] else float("inf")},
        )

    q_i, r_i = np.linalg.qr(x_i, mode="reduced")
    qty = q_i.T @ y_i
    beta_hat = solve_triangular(r_i, qty)
    resid = y_i - q_i @ qty
    return beta_hat, resid, q_i


def build_residuals(data: PanelDataset, workers: Optional[int] = None) -> ResidualSet:
    """Fit every unit of a panel.

    Args:
        data: Balanced panel
        workers: Fit units on a thread pool of this size (None or 1 = serial)

    Returns:
        ResidualSet with one row per unit, in the panel's unit order
    """
    n, t, p = data.n_units, data.n_periods, data.n_regressors

    def _fit(i: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        try:
            return fit_unit_ols(data.x[i], data.y[i])
        except CrossDepError as exc:
            raise exc.tagged(unit=data.unit_ids[i] if data.unit_ids else i)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            fits = list(executor.map(_fit, range(n)))
    else:
        fits = [_fit(i) for i in range(n)]

    beta_hat = np.empty((n, p))
    resid = np.empty((n, t))
    basis = np.empty((n, t, p))
    for i, (b, e, q) in enumerate(fits):
        beta_hat[i], resid[i], basis[i] = b, e, q

    logger.debug(f"Fitted {n} units (T={t}, p={p})")
    return ResidualSet(
        resid=resid,
        beta_hat=beta_hat,
        resid_sq_norm=np.einsum("it,it->i", resid, resid),
        ortho_basis=basis,
    )


def trace_pipj(q_i: np.ndarray, q_j: np.ndarray) -> Tuple[float, float]:
    """Traces of products of residual-maker matrices P = I − QQ'.

    With G = Q_i'Q_j, idempotence gives
    tr(P_iP_j) = T − 2p + ‖G‖²_F and tr((P_iP_j)²) = T − 2p + ‖G'G‖²_F.

    Returns:
        ``(tr(P_iP_j), tr((P_iP_j)^2))``
    """
    if q_i.shape != q_j.shape or q_i.ndim != 2:
        raise DimensionMismatch(f"Bases must share shape (T, p), got {q_i.shape} and {q_j.shape}")
    t, p = q_i.shape
    g = q_i.T @ q_j
    gtg = g.T @ g
    base = t - 2 * p
    return float(base + np.sum(g * g)), float(base + np.sum(gtg * gtg))


def pairwise_traces(resids: ResidualSet) -> Tuple[np.ndarray, np.ndarray]:
    """All-pairs version of :func:`trace_pipj`.

    Returns:
        Two ``(N, N)`` matrices holding tr(P_iP_j) and tr((P_iP_j)²)
    """
    q = resids.ortho_basis
    t, p = resids.n_periods, resids.n_regressors
    g = np.einsum("itp,jtq->ijpq", q, q, optimize=True)
    gtg = np.einsum("ijpq,ijpr->ijqr", g, g, optimize=True)
    base = t - 2 * p
    tr1 = base + np.einsum("ijpq,ijpq->ij", g, g)
    tr2 = base + np.einsum("ijqr,ijqr->ij", gtg, gtg)
    return tr1, tr2
