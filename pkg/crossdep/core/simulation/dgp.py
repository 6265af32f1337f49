"""
Data-generating processes for the size and power experiments.

y_it = α_i + Σ_{l≥2} x_li,t β_li + ε*_it with AR(1) regressors, AR(1)/ARMA(1,1)
errors, and either no cross-sectional structure (null), a spatial moving
average (dense alternative), or a Ψ^{1/2} mix on a random subset (sparse and
density designs).
"""

import logging
import math
from typing import Tuple, Union

import numpy as np
from scipy import linalg
from scipy.signal import lfilter

from ..distributions import Innovation, RngStream, standardized_innovations
from ..exceptions import EigenFailure
from ..panel.models import PanelDataset
from .models import AlternativeKind, ArmaSpec, ErrorFactorModel, ErrorProcess, McConfig

logger = logging.getLogger(__name__)

REGRESSOR_AR = 0.6
REGRESSOR_BURN_IN = 51
EIGEN_FLOOR = 1e-6

# Substreams of each replication stream.
COEFFICIENTS = 0
REGRESSORS = 1
ERRORS = 2
CROSS_SECTION = 3
# Stream id of the shared design when ``fixed_design`` is set.
DESIGN_STREAM = 2**32


def _arma_spec(process: Union[ErrorProcess, ArmaSpec]) -> ArmaSpec:
    return process if isinstance(process, ArmaSpec) else ErrorProcess(process).spec


def gen_coefficients(rng: np.random.Generator, n_units: int, n_regressors: int) -> Tuple[np.ndarray, np.ndarray]:
    """α_i ~ N(0, 1) and β_li ~ N(1, 0.04).

    Returns:
        ``(alpha, beta)`` of shapes ``(N,)`` and ``(N, p − 1)``
    """
    alpha = rng.standard_normal(n_units)
    beta = rng.normal(1.0, 0.2, size=(n_units, n_regressors - 1))
    return alpha, beta


def simulate_ar_regressors(shocks: np.ndarray, phi: float = REGRESSOR_AR) -> np.ndarray:
    """Run x_t = φ x_{t−1} + v_t from a zero start along the last axis."""
    return lfilter([1.0], [1.0, -phi], shocks, axis=-1)


def gen_regressors(rng: np.random.Generator, n_units: int, n_periods: int, n_regressors: int) -> np.ndarray:
    """Intercept plus p − 1 strictly exogenous AR(1) regressors per unit.

    Each stochastic column runs from t = −50 with x_{−51} = 0 and innovations
    v ~ N(0, ψ²/(1 − 0.36)), ψ² ~ χ²₆/6; periods t ≤ 0 are discarded.

    Returns:
        ``(N, T, p)`` regressors with column 0 equal to one
    """
    x = np.ones((n_units, n_periods, n_regressors))
    k = n_regressors - 1
    if k == 0:
        return x
    psi_sq = rng.chisquare(6, size=(n_units, k)) / 6.0
    scale = np.sqrt(psi_sq / (1.0 - REGRESSOR_AR**2))
    shocks = rng.standard_normal((n_units, k, n_periods + REGRESSOR_BURN_IN)) * scale[..., None]
    paths = simulate_ar_regressors(shocks)[..., -n_periods:]
    x[:, :, 1:] = np.transpose(paths, (0, 2, 1))
    return x


def filter_errors(innovations: np.ndarray, process: Union[ErrorProcess, ArmaSpec]) -> np.ndarray:
    """Apply the error recursion row by row (ε_1 = e_1)."""
    spec = _arma_spec(process)
    return lfilter([1.0, spec.ma], [1.0, -spec.ar], innovations, axis=-1)


def gen_null_errors(
    rng: np.random.Generator,
    n_units: int,
    n_periods: int,
    process: Union[ErrorProcess, ArmaSpec],
    innovation: Innovation,
) -> np.ndarray:
    """N x T errors with iid rows following the chosen serial-correlation setting."""
    innovations = standardized_innovations(rng, innovation, (n_units, n_periods))
    return filter_errors(innovations, process)


def impulse_response_matrix(process: Union[ErrorProcess, ArmaSpec], n_periods: int) -> np.ndarray:
    """Lower-triangular L with ε = L e for one error row."""
    return filter_errors(np.eye(n_periods), process).T


def sma_matrix(n_units: int, delta: float) -> np.ndarray:
    """Row map of the SMA(1) design: I + 0.5δ on the first off-diagonals."""
    w = np.eye(n_units)
    idx = np.arange(n_units - 1)
    w[idx, idx + 1] = 0.5 * delta
    w[idx + 1, idx] = 0.5 * delta
    return w


def apply_sma(errors: np.ndarray, delta: float) -> np.ndarray:
    """ε*_i = δ(0.5 ε_{i−1} + 0.5 ε_{i+1}) + ε_i, one neighbour at the boundary rows."""
    return sma_matrix(errors.shape[0], delta) @ errors


def repair_psd(matrix: np.ndarray, floor: float = EIGEN_FLOOR) -> Tuple[np.ndarray, bool]:
    """Clip eigenvalues below ``floor`` and reconstitute.

    Returns:
        ``(matrix, repaired)``; the input is returned untouched when already above the floor
    """
    try:
        eigval, eigvec = linalg.eigh(matrix)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"Symmetric eigensolver failed: {exc}") from exc
    if eigval[0] >= floor:
        return matrix, False
    clipped = (eigvec * np.maximum(eigval, floor)) @ eigvec.T
    return 0.5 * (clipped + clipped.T), True


def _support_psi(
    rng: np.random.Generator, n_units: int, support_size: int, low: float, high: float
) -> np.ndarray:
    psi = np.eye(n_units)
    support = np.sort(rng.choice(n_units, size=support_size, replace=False))
    rows, cols = np.triu_indices(support_size, k=1)
    values = rng.uniform(low, high, size=rows.size)
    psi[support[rows], support[cols]] = values
    psi[support[cols], support[rows]] = values
    return psi


def sparse_support_size(n_units: int) -> int:
    return math.ceil(n_units**0.3 - 1e-12)


def sparse_psi_range(n_units: int, n_periods: int) -> Tuple[float, float]:
    base = math.log(n_units) / n_periods
    return math.sqrt(4.0 * base), math.sqrt(6.0 * base)


def density_psi_range(n_units: int, n_periods: int, k: int) -> Tuple[float, float]:
    base = math.log(n_units) / n_periods
    return math.sqrt(7.0 / k * base), math.sqrt(9.0 / k * base)


def _draw_sparse_psi(rng: np.random.Generator, n_units: int, n_periods: int) -> np.ndarray:
    low, high = sparse_psi_range(n_units, n_periods)
    return _support_psi(rng, n_units, sparse_support_size(n_units), low, high)


def _draw_density_psi(rng: np.random.Generator, n_units: int, n_periods: int, k: int) -> np.ndarray:
    if not (2 <= k <= n_units):
        raise ValueError(f"Density support size must satisfy 2 <= k <= N, got k={k}")
    low, high = density_psi_range(n_units, n_periods, k)
    return _support_psi(rng, n_units, k, low, high)


def gen_sparse_psi(rng: np.random.Generator, n_units: int, n_periods: int) -> np.ndarray:
    """Ψ with unit diagonal and U[√(4 log N/T), √(6 log N/T)] entries on a random ⌈N^0.3⌉ block."""
    psi, repaired = repair_psd(_draw_sparse_psi(rng, n_units, n_periods))
    if repaired:
        logger.info("Sparse Psi was not positive definite; eigenvalues clipped")
    return psi


def gen_density_psi(rng: np.random.Generator, n_units: int, n_periods: int, k: int) -> np.ndarray:
    """Ψ with U[√(7/k · log N/T), √(9/k · log N/T)] entries on a random block of size k."""
    psi, repaired = repair_psd(_draw_density_psi(rng, n_units, n_periods, k))
    if repaired:
        logger.info(f"Density Psi (k={k}) was not positive definite; eigenvalues clipped")
    return psi


def psd_sqrt(psi: np.ndarray) -> np.ndarray:
    """Symmetric square root V diag(√λ) V'."""
    try:
        eigval, eigvec = linalg.eigh(psi)
    except np.linalg.LinAlgError as exc:
        raise EigenFailure(f"Symmetric eigensolver failed: {exc}") from exc
    root = (eigvec * np.sqrt(np.maximum(eigval, 0.0))) @ eigvec.T
    return 0.5 * (root + root.T)


def apply_psi_sqrt(psi: np.ndarray, errors: np.ndarray) -> np.ndarray:
    """ε* = Ψ^{1/2} ε."""
    return psd_sqrt(psi) @ errors


def build_error_model(config: McConfig, stream: RngStream) -> ErrorFactorModel:
    """Materialize the row and column maps of one replication's errors."""
    n, t = config.n_units, config.n_periods
    sigma_map = impulse_response_matrix(config.error_process, t)
    kind = config.alternative
    if kind is AlternativeKind.NULL:
        return ErrorFactorModel(row_map=None, sigma_map=sigma_map)
    if kind is AlternativeKind.SMA:
        return ErrorFactorModel(row_map=sma_matrix(n, config.delta), sigma_map=sigma_map)

    rng = stream.child(CROSS_SECTION).generator()
    if kind is AlternativeKind.SPARSE:
        raw = _draw_sparse_psi(rng, n, t)
    else:
        raw = _draw_density_psi(rng, n, t, int(config.density_k or 0))
    psi, repaired = repair_psd(raw)
    if repaired:
        logger.info(f"Psi repaired in replication stream {stream.stream_id}")
    return ErrorFactorModel(row_map=psd_sqrt(psi), sigma_map=sigma_map, psi_repaired=repaired)


def generate_panel(config: McConfig, rep: int) -> Tuple[PanelDataset, ErrorFactorModel]:
    """Draw replication ``rep`` of the experiment from its own streams."""
    stream = RngStream(config.seed, rep)
    design = RngStream(config.seed, DESIGN_STREAM) if config.fixed_design else stream
    n, t, p = config.n_units, config.n_periods, config.n_regressors

    alpha, beta = gen_coefficients(design.child(COEFFICIENTS).generator(), n, p)
    x = gen_regressors(design.child(REGRESSORS).generator(), n, t, p)
    model = build_error_model(config, stream)

    errors = gen_null_errors(
        stream.child(ERRORS).generator(), n, t, config.error_process, config.innovation
    )
    if model.row_map is not None:
        errors = model.row_map @ errors

    coefficients = np.column_stack([alpha, beta])
    y = np.einsum("itp,ip->it", x, coefficients) + errors
    return PanelDataset(y=y, x=x, has_intercept=True), model
