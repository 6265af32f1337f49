import numpy as np
import pytest

from crossdep.core.panel import PanelDataset, ResidualSet, build_residuals


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


def make_panel(rng: np.random.Generator, n: int, t: int, p: int = 3) -> PanelDataset:
    """Intercept plus p - 1 normal regressors, unit slopes, iid normal errors."""
    x = np.ones((n, t, p))
    x[:, :, 1:] = rng.standard_normal((n, t, p - 1))
    y = x.sum(axis=2) + rng.standard_normal((n, t))
    return PanelDataset(y=y, x=x)


@pytest.fixture
def small_panel(rng: np.random.Generator) -> PanelDataset:
    return make_panel(rng, n=6, t=12, p=2)


@pytest.fixture
def null_panel(rng: np.random.Generator) -> PanelDataset:
    return make_panel(rng, n=30, t=40, p=3)


@pytest.fixture
def null_resids(null_panel: PanelDataset) -> ResidualSet:
    return build_residuals(null_panel)


@pytest.fixture
def panel_csv(tmp_path):
    """2 units x 3 periods x 1 regressor."""
    path = tmp_path / "panel.csv"
    path.write_text(
        "unit,time,y,x1\n"
        "a,1,1.0,0.5\n"
        "a,2,2.5,1.5\n"
        "a,3,2.0,0.25\n"
        "b,1,0.3,-1.0\n"
        "b,2,0.9,2.0\n"
        "b,3,1.7,0.75\n"
    )
    return path


@pytest.fixture
def panel_factory(rng: np.random.Generator):
    def _make(n: int, t: int, p: int = 3) -> PanelDataset:
        return make_panel(rng, n, t, p)

    return _make
