import math

import numpy as np
import pytest
from scipy import integrate

from crossdep.core.distributions import (
    Innovation,
    RngStream,
    chi2_cdf,
    chi2_df4_cdf,
    chi2_df4_sf,
    chi2_quantile,
    chi2_sf,
    sample_t,
    standardized_innovations,
    std_normal_cdf,
    std_normal_quantile,
    std_normal_sf,
)
from crossdep.core.exceptions import DomainError


def test_normal_quantile_at_95_percent() -> None:
    assert std_normal_quantile(0.95) == pytest.approx(1.6448536270, abs=1e-9)


@pytest.mark.parametrize("p", [1e-10, 0.01, 0.3, 0.5, 0.975, 1 - 1e-10])
def test_normal_quantile_inverts_cdf(p: float) -> None:
    assert std_normal_cdf(std_normal_quantile(p)) == pytest.approx(p, abs=1e-10)


def test_normal_upper_tail_keeps_precision() -> None:
    assert std_normal_sf(10.0) == pytest.approx(7.6198530241604696e-24, rel=1e-8)


@pytest.mark.parametrize("p", [0.0, 1.0, -0.5, float("nan")])
def test_quantile_domain(p: float) -> None:
    with pytest.raises(DomainError):
        std_normal_quantile(p)


def test_closed_form_chi2_four_matches_integration() -> None:
    density = lambda x: x * math.exp(-0.5 * x) / 4.0
    for x in np.linspace(0.0, 50.0, 26):
        integral, _ = integrate.quad(density, 0.0, x, epsabs=1e-14, epsrel=1e-13)
        assert chi2_df4_cdf(x) == pytest.approx(integral, abs=1e-10)


def test_closed_form_agrees_with_general_cdf() -> None:
    for x in (0.1, 2.0, 9.4877, 30.0):
        assert chi2_df4_cdf(x) == pytest.approx(chi2_cdf(x, 4), abs=1e-12)
        assert chi2_df4_sf(x) == pytest.approx(chi2_sf(x, 4), rel=1e-10)


def test_chi2_quantile_inverts_cdf() -> None:
    for df in (1, 4, 45):
        q = chi2_quantile(0.9, df)
        assert chi2_cdf(q, df) == pytest.approx(0.9, abs=1e-10)


def test_chi2_large_df_is_finite() -> None:
    df = 100 * 99 // 2
    assert 0.0 < chi2_sf(df + 10.0, df) < 1.0
    assert chi2_quantile(0.95, df) > df


def test_chi2_domain() -> None:
    with pytest.raises(DomainError):
        chi2_cdf(-1.0, 3)
    with pytest.raises(DomainError):
        chi2_sf(1.0, 0)
    with pytest.raises(DomainError):
        chi2_df4_sf(-0.1)


def test_streams_are_reproducible() -> None:
    a = RngStream(7, 3, 1).generator().standard_normal(5)
    b = RngStream(7, 3, 1).generator().standard_normal(5)
    np.testing.assert_array_equal(a, b)


def test_distinct_streams_differ() -> None:
    base = RngStream(7, 3)
    draws = [
        base.generator().standard_normal(5),
        base.child(1).generator().standard_normal(5),
        RngStream(7, 4).generator().standard_normal(5),
        RngStream(8, 3).generator().standard_normal(5),
    ]
    for i in range(len(draws)):
        for j in range(i + 1, len(draws)):
            assert not np.array_equal(draws[i], draws[j])


@pytest.mark.parametrize("kind", list(Innovation))
def test_innovations_are_standardized(kind: Innovation) -> None:
    draws = standardized_innovations(RngStream(11).generator(), kind, 200_000)
    assert abs(draws.mean()) < 0.015
    assert draws.var() == pytest.approx(1.0, abs=0.03)


def test_chi5_innovations_are_skewed() -> None:
    draws = standardized_innovations(RngStream(5).generator(), Innovation.CHI5, 200_000)
    skew = np.mean(draws**3)
    assert skew == pytest.approx(math.sqrt(8.0 / 5.0), abs=0.1)


@pytest.mark.parametrize("df", [1, 2, 4, 10, 4950])
def test_chi2_quantile_and_cdf_are_inverse(df: int) -> None:
    for p in (1e-6, 0.001, 0.05, 0.5, 0.95, 0.999, 1 - 1e-6):
        assert chi2_cdf(chi2_quantile(p, df), df) == pytest.approx(p, abs=1e-8)


def test_streams_are_uncorrelated() -> None:
    draws = [
        RngStream(7, 0).generator().standard_normal(100_000),
        RngStream(7, 1).generator().standard_normal(100_000),
        RngStream(7, 0, 1).generator().standard_normal(100_000),
        RngStream(7, 2**32).generator().standard_normal(100_000),
    ]
    r = np.corrcoef(np.vstack(draws))
    off = r[np.triu_indices(len(draws), k=1)]
    assert np.all(np.abs(off) < 0.05)


def test_sample_t_matches_numpy_standard_t() -> None:
    draws = sample_t(RngStream(13).generator(), df=6, size=200_000)
    np.testing.assert_array_equal(draws, RngStream(13).generator().standard_t(6, 200_000))
    assert draws.var() == pytest.approx(1.5, abs=0.05)
