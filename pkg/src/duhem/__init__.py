"""Thermo-electro-elastic constitutive toolkit with executable
second-law verification.

The package derives entropy, stress, polarization, and heat-flux responses
from a single free-energy function, runs them along constructed admissible
processes, and checks every restriction of the dissipation analysis
(dissipation inequality, conduction inequality, vanishing internal
dissipation, entropy equality, objectivity, and spatial/referential
consistency) against finite-difference and dual-number oracles.
"""

from __future__ import annotations

from .dual import Dual
from .errors import (
    ConfigError,
    InvalidTemperature,
    NonInvertibleDeformation,
    NonPositiveTemperature,
    PhysicalStateError,
    SingularMatrix,
)
from .kinematics import Densities, MaterialState, ReferentialState, StateRates
from .linalg import Mat3, Vec3
from .materials import (
    FourierHeatModel,
    PiezoTensor,
    QuadraticCoupledModel,
    ResponseSet,
    full_response,
)

__version__ = "0.1.0"

__all__ = [
    "Dual",
    "Mat3",
    "Vec3",
    "MaterialState",
    "ReferentialState",
    "StateRates",
    "Densities",
    "QuadraticCoupledModel",
    "FourierHeatModel",
    "PiezoTensor",
    "ResponseSet",
    "full_response",
    "ConfigError",
    "InvalidTemperature",
    "NonInvertibleDeformation",
    "NonPositiveTemperature",
    "PhysicalStateError",
    "SingularMatrix",
    "__version__",
]
