"""
Run-wide settings and the flat ``key=value`` configuration file.

Values resolve as command-line flags over the config file over model defaults.
"""

from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Tuple, Union

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .core.distributions import Innovation
from .core.exceptions import ConfigError
from .core.independence.max_test import DEFAULT_NU
from .core.simulation import AlternativeKind, ErrorProcess, McConfig

# Keys accepted in a config file; same spelling as the long flags, dashes as underscores.
CONFIG_KEYS = frozenset(
    {
        "input",
        "alpha",
        "nu",
        "comparators",
        "no_intercept",
        "reps",
        "seed",
        "N",
        "T",
        "p",
        "null",
        "dist",
        "alt",
        "delta",
        "fixed_design",
        "format",
        "threads",
    }
)


class RunSettings(BaseModel):
    """Options shared by every subcommand."""

    model_config = ConfigDict(frozen=True)

    alpha: float = Field(0.05, gt=0.0, lt=1.0, description="Significance level")
    nu: float = Field(DEFAULT_NU, gt=0.0, description="Thresholding constant of the max test")
    comparators: bool = Field(False, description="Also run LM_BP, LM_PUY, LM_FJLX and CD_P")
    intercept: bool = Field(True, description="Prepend a constant regressor to loaded panels")
    format: str = Field("csv", pattern="^(csv|json)$", description="Report format")
    threads: Optional[int] = Field(None, ge=1, description="Worker threads")
    seed: int = Field(0, ge=0, description="Root seed")


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Read a flat ``key=value`` file.

    Raises:
        ConfigError: If the file is missing or names an unknown key
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")
    values = {k: v for k, v in dotenv_values(path).items() if v is not None}
    unknown = sorted(set(values) - CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"Unknown config key(s) in {path}: {', '.join(unknown)}")
    return values


def merge_options(file_values: Mapping[str, Any], flag_values: Mapping[str, Any]) -> Dict[str, Any]:
    """Flags that were given (not None) override file values."""
    merged: Dict[str, Any] = dict(file_values)
    merged.update({k: v for k, v in flag_values.items() if v is not None})
    return merged


def _as_bool(value: Any) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in {"1", "true", "yes", "on"}:
        return True
    if text in {"0", "false", "no", "off", ""}:
        return False
    raise ConfigError(f"Not a boolean: {value!r}")


def parse_alternative(text: str) -> Tuple[AlternativeKind, Optional[int]]:
    """``none|sma|sparse|density:K`` to an alternative and its support size."""
    value = text.strip().lower()
    if value in {"none", "null"}:
        return AlternativeKind.NULL, None
    if value in {"sma", "sparse"}:
        return AlternativeKind(value), None
    if value.startswith("density:"):
        try:
            return AlternativeKind.DENSITY, int(value.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"Bad density support size in {text!r}") from exc
    raise ConfigError(f"Unknown alternative {text!r}; expected none, sma, sparse or density:K")


def run_settings(options: Mapping[str, Any]) -> RunSettings:
    values: Dict[str, Any] = {
        key: options[key] for key in ("alpha", "nu", "format", "threads", "seed") if key in options
    }
    if "comparators" in options:
        values["comparators"] = _as_bool(options["comparators"])
    if "no_intercept" in options:
        values["intercept"] = not _as_bool(options["no_intercept"])
    try:
        return RunSettings(**values)
    except ValidationError as exc:
        raise ConfigError(f"Invalid settings: {_first_error(exc)}") from exc


def mc_config(options: Mapping[str, Any], **fields: Any) -> McConfig:
    """McConfig from merged flag/config values; ``fields`` win over both."""
    values: Dict[str, Any] = {}
    for key, field in (
        ("N", "n_units"),
        ("T", "n_periods"),
        ("p", "n_regressors"),
        ("reps", "reps"),
        ("alpha", "alpha"),
        ("seed", "seed"),
        ("nu", "nu"),
        ("delta", "delta"),
    ):
        if key in options:
            values[field] = options[key]
    try:
        if "null" in options:
            values["error_process"] = ErrorProcess(str(options["null"]).lower())
        if "dist" in options:
            values["innovation"] = Innovation(str(options["dist"]).lower())
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if "alt" in options:
        values["alternative"], values["density_k"] = parse_alternative(str(options["alt"]))
    if "fixed_design" in options:
        values["fixed_design"] = _as_bool(options["fixed_design"])
    if "comparators" in options:
        values["extended_comparators"] = _as_bool(options["comparators"])
    values.update(fields)
    try:
        return McConfig(**values)
    except ValidationError as exc:
        raise ConfigError(f"Invalid simulation config: {_first_error(exc)}") from exc


def _first_error(exc: ValidationError) -> str:
    error = exc.errors()[0]
    location = ".".join(str(part) for part in error.get("loc", ()))
    return f"{location}: {error.get('msg')}" if location else str(error.get("msg"))
