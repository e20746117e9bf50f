#!/usr/bin/env python3
"""
Shared utilities for WeylKit.
"""

from .errors import (
    WeylKitError,
    NotUnitaryError,
    NoConvergenceError,
    NotNormalizedError,
    ParamOutOfRangeError,
    UnknownFamilyError,
    GateFileError,
    ConfigurationError,
    FileOperationError,
)
from .config import (Settings, Tolerances, configure_settings, get_settings, load_settings,
                     reset_settings)

__all__ = [
    "WeylKitError",
    "NotUnitaryError",
    "NoConvergenceError",
    "NotNormalizedError",
    "ParamOutOfRangeError",
    "UnknownFamilyError",
    "GateFileError",
    "ConfigurationError",
    "FileOperationError",
    "Settings",
    "Tolerances",
    "configure_settings",
    "get_settings",
    "reset_settings",
    "load_settings",
]
