"""
Experiment configuration schema.

Config files are flat ``key = value`` text read with python-dotenv; list
values are comma separated. Precedence: CLI flags over file keys over
preset values.
"""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator
from pydantic import ValidationError as PydanticValidationError

from ..ensembles import EnsembleKind
from ..exceptions import ConfigFileError, ConfigurationError
from ..validation import (
    MAX_DIMENSION,
    MAX_REL_TOL,
    MAX_WORKERS,
    MIN_ASYMPTOTIC_DIMENSION,
    MIXING_TOLERANCE,
    PURITY_SLACK,
    SYMPLECTIC_KINDS,
)

EXPERIMENTS = (
    "rate-scaling",
    "purity-decay",
    "gin-rate-scaling",
    "rate-distribution",
    "cumulant-table",
    "ensemble-diagnostics",
)
MIXED = "mixed"
ENSEMBLE_NAMES = tuple(k.value for k in EnsembleKind) + (MIXED,)
LIST_FIELDS = ("kinds", "n_grid", "p0_values")
UINT64_MAX = (1 << 64) - 1

ExperimentName = Literal[
    "rate-scaling",
    "purity-decay",
    "gin-rate-scaling",
    "rate-distribution",
    "cumulant-table",
    "ensemble-diagnostics",
]


class ExperimentConfig(BaseModel):
    """One experiment run. Times are in units of 1/(Γσ²)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    experiment: ExperimentName
    kinds: list[str] = Field(default_factory=lambda: ["gue"])
    mix_first: str = "goe"
    mix_second: str = "ginue"
    mix_a1: float = math.sqrt(0.5)
    mix_a2: float = math.sqrt(0.5)
    sigma: float = Field(default=1.0, gt=0)
    gamma_total: float = Field(default=1.0, gt=0)
    n_grid: list[int] = Field(default_factory=lambda: [8, 16, 32])
    n_realizations: int = Field(default=2000, gt=0)
    n_states: int = Field(default=5000, gt=0)
    p0_policy: Literal["pure", "uniform", "fixed"] = "pure"
    p0: Optional[float] = Field(default=None, validate_default=True)
    p0_values: list[float] = Field(default_factory=lambda: [1.0, 0.5])
    n_jumps: int = Field(default=32, gt=0)
    t_max: float = Field(default=0.25, gt=0)
    n_points: int = Field(default=41, ge=2)
    spacing: Literal["linear", "log"] = "linear"
    rel_tol: float = Field(default=1e-8, gt=0, le=MAX_REL_TOL)
    hist_bins: int = Field(default=50, gt=0)
    analytic_shortcut: bool = False
    ansatz_rate: Literal["leading", "limit"] = "leading"
    seed: Optional[int] = Field(default=None, ge=0, le=UINT64_MAX)
    n_workers: int = Field(default=1, ge=1, le=MAX_WORKERS)
    output_dir: str = "results"
    emit_gnuplot: bool = False
    scale_note: str = ""

    @field_validator(*LIST_FIELDS, mode="before")
    @classmethod
    def _split_lists(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    @field_validator("seed", "p0", mode="before")
    @classmethod
    def _blank_is_none(cls, value: Any) -> Any:
        if isinstance(value, str) and not value.strip():
            return None
        return value

    @field_validator("kinds")
    @classmethod
    def _check_kinds(cls, value: list[str]) -> list[str]:
        kinds = [k.lower() for k in value]
        if not kinds:
            raise ValueError("at least one ensemble kind is required")
        unknown = [k for k in kinds if k not in ENSEMBLE_NAMES]
        if unknown:
            raise ValueError(f"unknown ensemble kinds {unknown}; expected any of {list(ENSEMBLE_NAMES)}")
        return kinds

    @field_validator("mix_first", "mix_second")
    @classmethod
    def _check_mix_kind(cls, value: str) -> str:
        kind = value.lower()
        if kind not in ENSEMBLE_NAMES[:-1]:
            raise ValueError(f"unknown ensemble kind {value!r}")
        return kind

    @field_validator("mix_a2")
    @classmethod
    def _check_mixing(cls, value: float, info: ValidationInfo) -> float:
        a1 = info.data.get("mix_a1")
        if a1 is not None and abs(a1 * a1 + value * value - 1.0) > MIXING_TOLERANCE:
            raise ValueError(f"mix_a1^2 + mix_a2^2 must equal 1, got {a1 * a1 + value * value:.15g}")
        return value

    @field_validator("n_grid")
    @classmethod
    def _check_grid(cls, value: list[int], info: ValidationInfo) -> list[int]:
        if not value:
            raise ValueError("n_grid must contain at least one dimension")
        for i, n in enumerate(value):
            if not MIN_ASYMPTOTIC_DIMENSION <= n <= MAX_DIMENSION:
                raise ValueError(
                    f"n_grid[{i}] = {n} outside [{MIN_ASYMPTOTIC_DIMENSION}, {MAX_DIMENSION}]"
                )
        symplectic = _symplectic_kinds(info.data)
        odd = [n for n in value if n % 2]
        if symplectic and odd:
            raise ValueError(f"{', '.join(symplectic)} need even dimensions, got odd {odd}")
        return value

    @field_validator("p0")
    @classmethod
    def _check_p0(cls, value: Optional[float], info: ValidationInfo) -> Optional[float]:
        if info.data.get("p0_policy") == "fixed":
            if value is None:
                raise ValueError("p0 is required when p0_policy is fixed")
            _check_purity_on_grid(value, info.data.get("n_grid") or [])
        return value

    @field_validator("p0_values")
    @classmethod
    def _check_p0_values(cls, value: list[float], info: ValidationInfo) -> list[float]:
        for p in value:
            _check_purity_on_grid(p, info.data.get("n_grid") or [])
        return value

    def resolved(self, **overrides: Any) -> "ExperimentConfig":
        """Copy with overrides applied and re-validated."""
        return ExperimentConfig(**{**self.model_dump(), **overrides})


def _symplectic_kinds(data: dict) -> list[str]:
    kinds = list(data.get("kinds") or [])
    if MIXED in kinds:
        kinds += [data.get("mix_first", ""), data.get("mix_second", "")]
    return sorted({k.upper() for k in kinds if k in SYMPLECTIC_KINDS})


def _check_purity_on_grid(p0: float, n_grid: list[int]) -> None:
    for n in n_grid:
        if p0 < 1.0 / n - PURITY_SLACK or p0 > 1.0 + PURITY_SLACK:
            raise ValueError(f"purity {p0} outside [1/{n}, 1] for N = {n}")


@dataclass(frozen=True)
class Diagnostic:
    """One configuration problem, addressed by a dotted field path."""
    field: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.message}"


def validate(raw: dict[str, Any]) -> list[Diagnostic]:
    """All schema violations of a raw config mapping; empty when valid. Never raises."""
    try:
        ExperimentConfig.model_validate(raw)
    except PydanticValidationError as e:
        return [
            Diagnostic(
                field=".".join(str(part) for part in err["loc"]) or "config",
                message=err["msg"],
            )
            for err in e.errors()
        ]
    return []


def read_config_file(path: str | Path) -> dict[str, Any]:
    """
    Parse a flat key = value config file.

    Raises:
        ConfigFileError: If the file is missing or unreadable
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigFileError(str(path), "file not found")
    try:
        values = dotenv_values(path)
    except (OSError, UnicodeDecodeError) as e:
        raise ConfigFileError(str(path), str(e)) from e
    return {key: value for key, value in values.items() if value is not None}


def load_config(
    preset: Optional[dict[str, Any]] = None,
    path: Optional[str | Path] = None,
    overrides: Optional[dict[str, Any]] = None,
) -> ExperimentConfig:
    """
    Merge preset, file and flag values and validate the result.

    Raises:
        ConfigFileError: If the config file cannot be read
        ConfigurationError: If the merged config is invalid
    """
    raw: dict[str, Any] = dict(preset or {})
    if path is not None:
        raw.update(read_config_file(path))
    raw.update({k: v for k, v in (overrides or {}).items() if v is not None})
    diagnostics = validate(raw)
    if diagnostics:
        raise ConfigurationError(
            "Invalid experiment configuration: " + "; ".join(str(d) for d in diagnostics),
            {"diagnostics": [d.__dict__ for d in diagnostics]},
        )
    return ExperimentConfig.model_validate(raw)
