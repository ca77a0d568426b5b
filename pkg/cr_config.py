"""Runtime settings for crgeom, read from the environment or a local .env file."""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, replace

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

TRUTHY = {"1", "true", "yes", "y", "on"}
LOG_LEVELS = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
OUTPUT_FORMATS = {"json", "text"}

EXACT_TOL = 1e-12
ORBIT_TOL = 1e-8


@dataclass(frozen=True)
class ToleranceConfig:
    exact_tol: float = EXACT_TOL
    orbit_tol: float = ORBIT_TOL
    residual_tol: float = 1e-10
    rank_rel_tol: float = 1e-9
    half_plane_band: float = 1e-10
    sphericity_rel_tol: float = 1e-9
    projective_tol: float = 1e-10
    borderline_factor: float = 100.0

    def as_dict(self) -> dict[str, float]:
        return {
            "exact_tol": self.exact_tol,
            "orbit_tol": self.orbit_tol,
            "residual_tol": self.residual_tol,
            "rank_rel_tol": self.rank_rel_tol,
            "half_plane_band": self.half_plane_band,
            "sphericity_rel_tol": self.sphericity_rel_tol,
            "projective_tol": self.projective_tol,
        }


DEFAULT_TOLERANCES = ToleranceConfig()


@dataclass(frozen=True)
class CRSettings:
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    default_seed: int = 42
    default_samples: int = 100
    log_level: str = "INFO"
    log_file: str = ""
    log_max_bytes: int = 1_000_000
    output_format: str = "json"
    include_points: bool = False


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r", name, raw)
        return default


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name, "").strip()
    if not raw:
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning("Ignoring non-numeric %s=%r", name, raw)
        return default


def env_flag(name: str, default: bool = False) -> bool:
    raw = os.getenv(name)
    if raw is None:
        return default
    return raw.strip().lower() in TRUTHY


def load_settings(*, use_dotenv: bool = True) -> CRSettings:
    if use_dotenv:
        load_dotenv()

    tolerances = ToleranceConfig(
        exact_tol=_env_float("CRGEOM_EXACT_TOL", EXACT_TOL),
        orbit_tol=_env_float("CRGEOM_ORBIT_TOL", ORBIT_TOL),
        residual_tol=_env_float("CRGEOM_RESIDUAL_TOL", 1e-10),
    )
    return CRSettings(
        tolerances=tolerances,
        default_seed=_env_int("CRGEOM_SEED", 42),
        default_samples=_env_int("CRGEOM_SAMPLES", 100),
        log_level=(os.getenv("CRGEOM_LOG_LEVEL", "INFO") or "INFO").strip().upper(),
        log_file=(os.getenv("CRGEOM_LOG_FILE", "") or "").strip(),
        log_max_bytes=_env_int("CRGEOM_LOG_MAX_BYTES", 1_000_000),
        output_format=(os.getenv("CRGEOM_FORMAT", "json") or "json").strip().lower(),
        include_points=env_flag("CRGEOM_POINTS"),
    )


def with_overrides(
    settings: CRSettings,
    *,
    tol: float | None = None,
    seed: int | None = None,
    samples: int | None = None,
    output_format: str | None = None,
) -> CRSettings:
    tolerances = settings.tolerances
    if tol is not None:
        tolerances = replace(tolerances, residual_tol=float(tol))
    return replace(
        settings,
        tolerances=tolerances,
        default_seed=settings.default_seed if seed is None else int(seed),
        default_samples=settings.default_samples if samples is None else int(samples),
        output_format=settings.output_format if output_format is None else output_format,
    )


def validate_settings(settings: CRSettings) -> list[str]:
    warnings: list[str] = []
    tol = settings.tolerances
    for name, value in tol.as_dict().items():
        if value <= 0:
            warnings.append(f"Tolerance {name} must be positive (got {value}).")
        elif value > 1e-6:
            warnings.append(
                f"Tolerance {name}={value} is looser than 1e-6; verdicts may flip near thresholds."
            )
    if tol.exact_tol > tol.orbit_tol:
        warnings.append("CRGEOM_EXACT_TOL is larger than CRGEOM_ORBIT_TOL.")
    if settings.default_samples < 1:
        warnings.append("CRGEOM_SAMPLES must be at least 1.")
    if settings.log_level not in LOG_LEVELS:
        warnings.append(f"CRGEOM_LOG_LEVEL={settings.log_level!r} is not a logging level.")
    if settings.output_format not in OUTPUT_FORMATS:
        warnings.append(f"CRGEOM_FORMAT must be one of {sorted(OUTPUT_FORMATS)}.")
    if settings.log_file and settings.log_max_bytes <= 0:
        warnings.append("CRGEOM_LOG_FILE is set but CRGEOM_LOG_MAX_BYTES is not positive.")

    for warning in warnings:
        logger.warning("Config warning: %s", warning)
    return warnings
