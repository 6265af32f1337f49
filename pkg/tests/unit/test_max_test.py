import importlib
import logging
import math

import numpy as np
import pytest

from crossdep.core.exceptions import DegenerateDiagonal, DomainError, ZeroMatrix, ZeroTrace
from crossdep.core.independence import (
    TestMethod,
    column_sample_cov,
    compute_ln,
    compute_p_hat,
    compute_u_hat,
    estimate_column_cov,
    gumbel_cdf,
    gumbel_critical,
    max_test,
    scaling_ratio,
    threshold_cov,
)
from crossdep.core.independence.max_test import P_HAT_FLOOR, gumbel_calibration, gumbel_sf, threshold_level
from crossdep.core.independence.models import GumbelCalibration
from crossdep.core.panel import CorrMatrix, ResidualSet, build_residuals

max_test_module = importlib.import_module("crossdep.core.independence.max_test")


@pytest.mark.parametrize("alpha", [0.01, 0.05, 0.10])
def test_critical_value_is_gumbel_quantile(alpha: float) -> None:
    assert gumbel_cdf(gumbel_critical(alpha)) == pytest.approx(1.0 - alpha, abs=1e-12)


def test_critical_value_at_five_percent() -> None:
    assert gumbel_critical(0.05) == pytest.approx(2.7162, abs=1e-3)


def test_gumbel_tails_sum_to_one() -> None:
    for y in (-3.0, 0.0, 2.7, 20.0):
        assert gumbel_cdf(y) + gumbel_sf(y) == pytest.approx(1.0, abs=1e-14)


def test_centering_uses_log_n() -> None:
    calibration = gumbel_calibration(0.05, 100)
    assert calibration.centering == pytest.approx(4.0 * math.log(100) - math.log(math.log(100)))


def test_ln_is_largest_squared_correlation(rng: np.random.Generator) -> None:
    values = rng.uniform(-0.9, 0.9, size=15)
    corr = CorrMatrix.from_pairs(6, list(values))
    expected = max(v * v for v in values)
    assert compute_ln(corr) == pytest.approx(expected, abs=1e-15)


def test_column_covariance_of_two_rows() -> None:
    r1 = np.array([1.0, 2.0, 4.0])
    r2 = np.array([3.0, 0.0, 1.0])
    sigma = column_sample_cov(ResidualSet.from_residuals(np.vstack([r1, r2])))
    m = 0.5 * (r1 + r2)
    for i in range(3):
        for j in range(3):
            expected = (r1[i] - m[i]) * (r1[j] - m[j]) + (r2[i] - m[i]) * (r2[j] - m[j])
            assert sigma[i, j] == pytest.approx(expected, abs=1e-12)


def test_threshold_keeps_diagonal_and_strong_entries() -> None:
    sigma = np.array([[1.0, 0.5], [0.5, 1.0]])
    kept = threshold_cov(sigma, p_hat_n=1.0, nu=0.1, n_units=1)
    np.testing.assert_array_equal(kept, sigma)

    zeroed = threshold_cov(sigma, p_hat_n=1.0, nu=10.0, n_units=1)
    np.testing.assert_array_equal(zeroed, np.eye(2))


def test_threshold_always_keeps_perfect_correlation() -> None:
    sigma = np.array([[1.0, 1.0], [1.0, 1.0]])
    np.testing.assert_array_equal(threshold_cov(sigma, 1.0, 1e6, 1), sigma)


def test_threshold_rejects_nonpositive_diagonal() -> None:
    with pytest.raises(DegenerateDiagonal):
        threshold_cov(np.array([[1.0, 0.0], [0.0, 0.0]]), 1.0, 1.42, 10)


def test_threshold_rejects_nonpositive_nu() -> None:
    with pytest.raises(DomainError):
        threshold_cov(np.eye(3), 1.0, 0.0, 10)


def test_scaling_ratio_of_identity_is_dimension() -> None:
    assert scaling_ratio(np.eye(7)) == pytest.approx(7.0)


def test_scaling_ratio_of_zero_matrix_fails() -> None:
    with pytest.raises(ZeroMatrix):
        scaling_ratio(np.zeros((3, 3)))


def test_p_hat_is_floored_with_warning(caplog: pytest.LogCaptureFixture) -> None:
    u_hat = 2.0 * np.eye(5)
    with caplog.at_level(logging.WARNING):
        value = compute_p_hat(u_hat, n_periods=5, n_units=5)
    assert value == P_HAT_FLOOR
    assert "below floor" in caplog.text


def test_max_test_needs_four_units() -> None:
    resids = ResidualSet.from_residuals(np.random.default_rng(1).standard_normal((3, 10)))
    with pytest.raises(DomainError):
        max_test(resids)


def test_max_test_outcome(null_resids) -> None:
    out = max_test(null_resids, alpha=0.05)
    assert out.method is TestMethod.LN
    assert out.aux["critical_value"] == pytest.approx(gumbel_critical(0.05))
    assert out.reject == (out.statistic >= out.aux["critical_value"])
    assert out.aux["scaling_ratio"] > 0.0
    assert 0.0 <= out.aux["kept_fraction"] <= 1.0


def test_max_test_detects_one_strong_pair(rng: np.random.Generator) -> None:
    e = rng.standard_normal((40, 50))
    e[1] = 0.95 * e[0] + math.sqrt(1 - 0.95**2) * e[1]
    out = max_test(ResidualSet.from_residuals(e))
    assert out.reject


def test_extreme_ratio_logs_warning(rng: np.random.Generator, caplog: pytest.LogCaptureFixture) -> None:
    resids = ResidualSet.from_residuals(rng.standard_normal((5, 100)))
    with caplog.at_level(logging.WARNING):
        max_test(resids)
    assert "N/T" in caplog.text


def _random_sigma_hat(rng: np.random.Generator, n: int = 20, t: int = 8) -> np.ndarray:
    e = rng.standard_normal((n, t))
    e[:, 1:] += 0.7 * e[:, :-1]
    return column_sample_cov(ResidualSet.from_residuals(e))


def test_thresholding_is_idempotent(rng: np.random.Generator) -> None:
    sigma_hat = _random_sigma_hat(rng)
    once = threshold_cov(sigma_hat, p_hat_n=1.0, nu=1.42, n_units=20)
    twice = threshold_cov(once, p_hat_n=1.0, nu=1.42, n_units=20)
    np.testing.assert_array_equal(twice, once)


def test_larger_nu_keeps_a_subset(rng: np.random.Generator) -> None:
    sigma_hat = _random_sigma_hat(rng)
    kept = [threshold_cov(sigma_hat, 1.0, nu, 20) != 0.0 for nu in (0.2, 0.8, 1.42, 3.0)]
    for loose, strict in zip(kept, kept[1:]):
        assert np.all(loose[strict])
    assert kept[0].sum() > kept[-1].sum()


@pytest.mark.parametrize("factor, kept", [(1.01, True), (0.99, False)])
def test_threshold_boundary(factor: float, kept: bool) -> None:
    level = 1.42 * math.sqrt(1.0 * math.log(3) / 10)
    assert threshold_level(1.0, 1.42, 3, 10) == pytest.approx(level, abs=1e-15)
    target = factor * level
    # |θ|/(1 − θ²) = target
    theta = (math.sqrt(1.0 + 4.0 * target * target) - 1.0) / (2.0 * target)
    sigma_hat = np.eye(3)
    sigma_hat[0, 1] = sigma_hat[1, 0] = theta

    result = threshold_cov(sigma_hat, p_hat_n=1.0, nu=1.42, n_units=10)

    expected = theta if kept else 0.0
    assert result[0, 1] == expected
    assert result[1, 0] == expected
    np.testing.assert_array_equal(np.diag(result), 1.0)


def test_u_hat_of_orthonormal_rows() -> None:
    rows = np.eye(6)[:4]
    u_hat = compute_u_hat(ResidualSet.from_residuals(rows), trace_sigma_hat=2.5)
    np.testing.assert_allclose(u_hat, np.eye(4) / 2.5, atol=1e-15)


def test_u_hat_of_duplicated_rows(rng: np.random.Generator) -> None:
    e = rng.standard_normal((4, 9))
    e[2] = e[1]
    u_hat = compute_u_hat(ResidualSet.from_residuals(e), trace_sigma_hat=3.0)
    assert u_hat[1, 2] == pytest.approx(u_hat[1, 1], abs=1e-12)
    np.testing.assert_allclose(u_hat, e @ e.T / 3.0, atol=1e-12)


def test_u_hat_needs_positive_trace() -> None:
    with pytest.raises(ZeroTrace):
        compute_u_hat(ResidualSet.from_residuals(np.ones((3, 4))), trace_sigma_hat=0.0)


def test_p_hat_of_identity() -> None:
    assert compute_p_hat(np.eye(10), n_periods=100, n_units=10) == pytest.approx(0.9, abs=1e-15)
    assert compute_p_hat(np.eye(10), n_periods=5, n_units=10) == P_HAT_FLOOR


def test_scaling_ratio_of_ar_toeplitz() -> None:
    lags = np.abs(np.subtract.outer(np.arange(4), np.arange(4)))
    sigma = 0.5**lags
    assert np.sum(sigma * sigma) == pytest.approx(5.78125, abs=1e-12)
    assert scaling_ratio(sigma) == pytest.approx(16.0 / 5.78125, abs=1e-12)
    assert scaling_ratio(sigma) == pytest.approx(2.7676, abs=1e-4)


def test_scaling_ratio_of_single_spike() -> None:
    sigma = np.zeros((5, 5))
    sigma[0, 0] = 3.0
    assert scaling_ratio(sigma) == pytest.approx(1.0)


def test_statistic_at_critical_value_rejects(null_resids, monkeypatch: pytest.MonkeyPatch) -> None:
    first = max_test(null_resids, alpha=0.05)
    centering = gumbel_calibration(0.05, null_resids.n_units).centering

    def pinned(w_alpha: float):
        return lambda alpha, n_units: GumbelCalibration(alpha=alpha, w_alpha=w_alpha, centering=centering)

    monkeypatch.setattr(max_test_module, "gumbel_calibration", pinned(first.statistic))
    assert max_test(null_resids, alpha=0.05).reject

    monkeypatch.setattr(max_test_module, "gumbel_calibration", pinned(np.nextafter(first.statistic, np.inf)))
    assert not max_test(null_resids, alpha=0.05).reject


def test_no_correlation_gives_centering_only(rng: np.random.Generator) -> None:
    q, _ = np.linalg.qr(rng.standard_normal((8, 5)))
    out = max_test(ResidualSet.from_residuals(q.T))
    assert out.aux["l_n"] == pytest.approx(0.0, abs=1e-20)
    assert out.statistic == pytest.approx(-gumbel_calibration(0.05, 5).centering, abs=1e-12)
    assert out.p_value > 0.95
    assert not out.reject


def test_statistic_grows_with_one_strong_pair(rng: np.random.Generator) -> None:
    base = rng.standard_normal((100, 100))
    statistics = []
    for coupling in (0.0, 0.6, 0.9):
        e = base.copy()
        e[1] = coupling * e[0] + math.sqrt(1 - coupling**2) * base[1]
        statistics.append(max_test(ResidualSet.from_residuals(e)))
    assert statistics[-1].reject
    assert statistics[0].statistic <= statistics[1].statistic <= statistics[2].statistic


def test_relabelling_units_changes_nothing(null_panel) -> None:
    order = np.random.default_rng(5).permutation(null_panel.n_units)
    resids = build_residuals(null_panel)
    shuffled = build_residuals(null_panel.permuted(order))

    a = estimate_column_cov(resids)
    b = estimate_column_cov(shuffled)
    np.testing.assert_allclose(b.sigma_hat, a.sigma_hat, atol=1e-12)
    np.testing.assert_array_equal(b.sigma_tilde != 0.0, a.sigma_tilde != 0.0)

    out_a, out_b = max_test(resids), max_test(shuffled)
    assert out_b.aux["l_n"] == pytest.approx(out_a.aux["l_n"], abs=1e-12)
    assert out_b.statistic == pytest.approx(out_a.statistic, abs=1e-9)
