"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "SingularMatrix",
    "PhysicalStateError",
    "InvalidTemperature",
    "NonPositiveTemperature",
    "NonInvertibleDeformation",
    "ConfigError",
]


class SingularMatrix(ValueError):
    """Matrix inversion requested below the singularity threshold."""


class PhysicalStateError(ValueError):
    """A state violates a hard physical admissibility constraint."""


class InvalidTemperature(PhysicalStateError):
    """Absolute temperature must be strictly positive."""


class NonPositiveTemperature(InvalidTemperature):
    """A constructed process dips at or below the temperature floor."""


class NonInvertibleDeformation(PhysicalStateError):
    """Deformation gradient must have strictly positive determinant."""


class ConfigError(ValueError):
    """Run configuration is malformed or inconsistent."""
