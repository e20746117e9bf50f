#!/usr/bin/env python3
"""
Shared Error Handling Module for WeylKit

Provides consistent exception types across the library and the CLI.
"""

from __future__ import annotations


class WeylKitError(Exception):
    """Base exception for the WeylKit gate-analysis tools."""

    def __init__(self, message: str, details: dict | None = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} - {self.details}"
        return self.message


class NotUnitaryError(WeylKitError):
    """Matrix is not unitary within tolerance (details carry the deviation)."""

    @property
    def deviation(self) -> float:
        return float(self.details.get("deviation", float("nan")))


class NoConvergenceError(WeylKitError):
    """Eigenvalue or coordinate extraction failed."""

    pass


class NotNormalizedError(WeylKitError):
    """State vector is not normalized."""

    pass


class ParamOutOfRangeError(WeylKitError):
    """Family parameter lies outside its closed range."""

    pass


class UnknownFamilyError(WeylKitError):
    """No gate family is registered under the given label."""

    pass


class GateFileError(WeylKitError):
    """Gate file could not be parsed."""

    pass


class ConfigurationError(WeylKitError):
    """Configuration error."""

    pass


class FileOperationError(WeylKitError):
    """File operation failed."""

    pass
