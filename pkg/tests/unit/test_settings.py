import pytest

from crossdep.core.distributions import Innovation
from crossdep.core.exceptions import ConfigError
from crossdep.core.simulation import AlternativeKind, ErrorProcess
from crossdep.settings import (
    load_config_file,
    mc_config,
    merge_options,
    parse_alternative,
    run_settings,
)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("none", (AlternativeKind.NULL, None)),
        ("sma", (AlternativeKind.SMA, None)),
        ("Sparse", (AlternativeKind.SPARSE, None)),
        ("density:8", (AlternativeKind.DENSITY, 8)),
    ],
)
def test_parse_alternative(text: str, expected) -> None:
    assert parse_alternative(text) == expected


@pytest.mark.parametrize("text", ["dense", "density:", "density:x"])
def test_bad_alternative(text: str) -> None:
    with pytest.raises(ConfigError):
        parse_alternative(text)


def test_config_file_values(tmp_path) -> None:
    path = tmp_path / "run.cfg"
    path.write_text("# cell\nalpha=0.10\nN=50\nnull=arma11\n")
    assert load_config_file(path) == {"alpha": "0.10", "N": "50", "null": "arma11"}


def test_unknown_config_key(tmp_path) -> None:
    path = tmp_path / "run.cfg"
    path.write_text("alpha=0.10\nbogus=1\n")
    with pytest.raises(ConfigError, match="bogus"):
        load_config_file(path)


def test_missing_config_file(tmp_path) -> None:
    with pytest.raises(ConfigError):
        load_config_file(tmp_path / "absent.cfg")


def test_flags_override_file_values() -> None:
    merged = merge_options({"alpha": "0.10", "reps": "50"}, {"alpha": 0.01, "reps": None})
    assert merged == {"alpha": 0.01, "reps": "50"}


def test_mc_config_from_text_values() -> None:
    config = mc_config(
        {"N": "50", "T": "60", "p": "3", "null": "arma11", "dist": "t6", "alt": "density:5", "reps": "7"}
    )
    assert (config.n_units, config.n_periods, config.n_regressors) == (50, 60, 3)
    assert config.error_process is ErrorProcess.ARMA11
    assert config.innovation is Innovation.T6
    assert config.alternative is AlternativeKind.DENSITY
    assert config.density_k == 5
    assert config.reps == 7


def test_invalid_mc_config_is_a_config_error() -> None:
    with pytest.raises(ConfigError):
        mc_config({"N": "10", "T": "3", "p": "3"})
    with pytest.raises(ConfigError):
        mc_config({"dist": "cauchy"})


def test_run_settings_booleans() -> None:
    settings = run_settings({"comparators": "true", "no_intercept": "yes", "alpha": "0.1"})
    assert settings.comparators
    assert not settings.intercept
    assert settings.alpha == pytest.approx(0.1)
    with pytest.raises(ConfigError):
        run_settings({"format": "xml"})
