#!/usr/bin/env python3
"""
Configuration for WeylKit

All numerical tolerances live in one record. Defaults can be overridden by a
YAML file found through (in order):

1. An explicit path passed to ``load_settings``
2. Environment variable WEYLKIT_CONFIG
3. templates/weylkit.yaml in the project root
4. Built-in defaults
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import yaml

from .errors import ConfigurationError

logger = logging.getLogger(__name__)

CONFIG_ENV_VAR = "WEYLKIT_CONFIG"


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances, all absolute."""
    unitary: float = 1e-10         # max |U†U - I| entry
    eig: float = 1e-8              # |λ| = 1 and spectrum consistency
    g2_imag: float = 1e-9          # allowed imaginary part of G2
    equivalence: float = 1e-9      # invariant comparison
    pe_coords: float = 1e-9        # slack in the coordinate PE test
    pe_hull: float = 1e-9          # slack in the convex-hull PE test
    roundtrip: float = 1e-8        # coordinate extraction validation
    normalization: float = 1e-9    # state norm
    cnot: float = 1e-9             # CNOT-class verdict


@dataclass(frozen=True)
class Settings:
    """Runtime settings."""
    tolerances: Tolerances = field(default_factory=Tolerances)
    mc_chunk_size: int = 10000
    workers: int = 1
    color: bool = True
    log_level: str = "WARNING"


def get_project_root() -> Path:
    """Get the project root directory."""
    return Path(__file__).parent.parent.resolve()


def get_default_config_path() -> Path:
    """Get the config path shipped with the project."""
    return get_project_root() / "templates" / "weylkit.yaml"


def resolve_config_path(path: str | Path | None = None) -> Path | None:
    """Find the configuration file to use, or None for built-in defaults."""
    if path is not None:
        return Path(path)
    if env_path := os.getenv(CONFIG_ENV_VAR):
        return Path(env_path)
    default = get_default_config_path()
    if default.exists():
        return default
    return None


def _build_tolerances(data: dict) -> Tolerances:
    known = {f.name for f in fields(Tolerances)}
    unknown = set(data) - known
    if unknown:
        raise ConfigurationError("Unknown tolerance keys", {"keys": sorted(unknown)})
    values = {}
    for key, value in data.items():
        try:
            value = float(value)
        except (TypeError, ValueError):
            raise ConfigurationError(f"Tolerance '{key}' is not a number", {"value": value})
        if not value > 0:
            raise ConfigurationError(f"Tolerance '{key}' must be positive", {"value": value})
        values[key] = value
    return Tolerances(**values)


def settings_from_dict(data: dict) -> Settings:
    """Build Settings from a parsed YAML mapping."""
    if not isinstance(data, dict):
        raise ConfigurationError("Configuration root must be a mapping")

    known = {f.name for f in fields(Settings)}
    unknown = set(data) - known
    if unknown:
        raise ConfigurationError("Unknown configuration keys", {"keys": sorted(unknown)})

    settings = Settings()
    if "tolerances" in data:
        settings = replace(settings, tolerances=_build_tolerances(data["tolerances"] or {}))
    if "mc_chunk_size" in data:
        chunk = int(data["mc_chunk_size"])
        if chunk < 1:
            raise ConfigurationError("mc_chunk_size must be at least 1", {"value": chunk})
        settings = replace(settings, mc_chunk_size=chunk)
    if "workers" in data:
        workers = int(data["workers"])
        if workers < 1:
            raise ConfigurationError("workers must be at least 1", {"value": workers})
        settings = replace(settings, workers=workers)
    if "color" in data:
        settings = replace(settings, color=bool(data["color"]))
    if "log_level" in data:
        level = str(data["log_level"]).upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ConfigurationError("Invalid log_level", {"value": level})
        settings = replace(settings, log_level=level)
    return settings


def load_settings(path: str | Path | None = None) -> Settings:
    """Load settings from YAML.

    Args:
        path: Optional explicit config path

    Returns:
        Settings instance (defaults when no file is found)
    """
    config_path = resolve_config_path(path)
    if config_path is None:
        return Settings()

    if not config_path.exists():
        raise ConfigurationError("Config file not found", {"path": str(config_path)})

    try:
        data = yaml.safe_load(config_path.read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigurationError(f"Failed to read config: {e}", {"path": str(config_path)})

    logger.debug("Loaded configuration from %s", config_path)
    return settings_from_dict(data)


_active_settings: Settings | None = None


def configure_settings(path: str | Path | None = None) -> Settings:
    """Load settings and install them process-wide.

    Args:
        path: Optional explicit config path; None uses the normal lookup

    Returns:
        The installed settings
    """
    global _active_settings
    _active_settings = load_settings(path)
    return _active_settings


def reset_settings():
    """Forget installed settings; the next get_settings() reloads."""
    global _active_settings
    _active_settings = None


def get_settings() -> Settings:
    """Process-wide settings, loaded on first use."""
    if _active_settings is None:
        return configure_settings()
    return _active_settings
