"""States, strain measures, and spatial/referential transforms.

Conventions: the deformation gradient F maps referential to spatial
coordinates with layout F[i, K] = dx_i / dX_K; det F > 0 is required
everywhere. Vector pull-backs and push-forwards follow the Piola rule
H = J F^-1 h for flux-like vectors (heat flux, polarization per volume,
electric displacement) and the plain transpose rule for gradient-like
covectors (temperature gradient, electric field).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from .errors import InvalidTemperature, NonInvertibleDeformation
from .linalg import Mat3, Vec3, ddot, det, inverse

__all__ = [
    "MaterialState",
    "ReferentialState",
    "StateRates",
    "Densities",
    "green_lagrange",
    "pull_back_electric",
    "pull_back_tempgrad",
    "piola_vector",
    "push_forward_vector",
    "electric_displacement",
    "referential_displacement",
    "velocity_gradient",
    "stress_power",
    "to_referential",
    "to_spatial",
]

FOUR_PI = 4.0 * math.pi


def _check_deformation(F: Mat3):
    j = det(F)
    if j <= 0.0:
        raise NonInvertibleDeformation(
            f"deformation gradient must have positive determinant (det F = {j})"
        )
    return j


def _check_temperature(theta):
    if theta <= 0.0:
        raise InvalidTemperature(f"absolute temperature must be positive (theta = {theta})")


@dataclass(frozen=True)
class MaterialState:
    """Spatial-description state: deformation, temperature, electric field,
    and spatial temperature gradient."""

    F: Mat3
    theta: Any
    em: Vec3
    g: Vec3

    def __post_init__(self):
        _check_deformation(self.F)
        _check_temperature(self.theta)

    @property
    def jacobian(self):
        return det(self.F)


@dataclass(frozen=True)
class ReferentialState:
    """Referential-description state: deformation, temperature, and the
    pulled-back field and temperature-gradient vectors W = F^T em,
    G = F^T g."""

    F: Mat3
    theta: Any
    w: Vec3
    g_ref: Vec3

    def __post_init__(self):
        _check_deformation(self.F)
        _check_temperature(self.theta)

    @property
    def jacobian(self):
        return det(self.F)


@dataclass(frozen=True)
class StateRates:
    """Material time derivatives of the spatial state variables."""

    f_dot: Mat3
    theta_dot: Any
    em_dot: Vec3
    g_dot: Vec3


@dataclass(frozen=True)
class Densities:
    """Paired referential and spatial mass densities."""

    rho_ref: Any
    rho: Any

    def __post_init__(self):
        if self.rho_ref <= 0.0 or self.rho <= 0.0:
            raise ValueError("densities must be positive")

    @staticmethod
    def from_deformation(rho_ref, F: Mat3) -> "Densities":
        """Spatial density from mass conservation rho = rho_ref / det F."""
        j = _check_deformation(F)
        return Densities(rho_ref, rho_ref / j)

    @staticmethod
    def checked(rho_ref, rho, F: Mat3, tol: float = 1e-12) -> "Densities":
        """Build from both densities, rejecting pairs that violate
        rho_ref = rho * det F beyond ``tol`` relative."""
        j = _check_deformation(F)
        if abs(rho_ref - rho * j) > tol * max(abs(rho_ref), abs(rho * j)):
            raise ValueError(
                f"inconsistent densities: rho_ref={rho_ref} vs rho*detF={rho * j}"
            )
        return Densities(rho_ref, rho)


def green_lagrange(F: Mat3) -> Mat3:
    """Green-Lagrange strain E = (F^T F - I) / 2 (exactly symmetric)."""
    c = F.T @ F
    return Mat3(
        (c.xx - 1.0) * 0.5, c.xy * 0.5, c.xz * 0.5,
        c.xy * 0.5, (c.yy - 1.0) * 0.5, c.yz * 0.5,
        c.xz * 0.5, c.yz * 0.5, (c.zz - 1.0) * 0.5,
    )


def pull_back_electric(F: Mat3, em: Vec3) -> Vec3:
    """Objective referential field variable W = F^T em."""
    return F.T @ em


def pull_back_tempgrad(F: Mat3, g: Vec3) -> Vec3:
    """Referential temperature gradient G = F^T g."""
    return F.T @ g


def piola_vector(F: Mat3, h: Vec3) -> Vec3:
    """Piola transform H = det(F) F^-1 h of a spatial flux-like vector."""
    j = _check_deformation(F)
    return j * (inverse(F) @ h)


def push_forward_vector(F: Mat3, H: Vec3) -> Vec3:
    """Inverse Piola transform h = F H / det(F)."""
    j = _check_deformation(F)
    return (F @ H) / j


def electric_displacement(em: Vec3, p: Vec3) -> Vec3:
    """Spatial electric displacement d = em + 4 pi p (Gaussian units)."""
    return em + FOUR_PI * p


def referential_displacement(F: Mat3, em: Vec3, p: Vec3) -> Vec3:
    """Referential electric displacement: Piola transform of em + 4 pi p."""
    return piola_vector(F, electric_displacement(em, p))


def velocity_gradient(F: Mat3, F_dot: Mat3) -> Mat3:
    """Spatial velocity gradient L = Fdot F^-1, L[i, j] = dv_i / dx_j."""
    return F_dot @ inverse(F)


def stress_power(tau: Mat3, F: Mat3, F_dot: Mat3):
    """Componentwise contraction ddot(tau, Fdot F^-1).

    For symmetric tau this equals the mechanical working tr(tau grad v);
    with a nonsymmetric tau the two pairings differ by twice the
    contraction of the antisymmetric part with the spin.
    """
    return ddot(tau, velocity_gradient(F, F_dot))


def to_referential(state: MaterialState) -> ReferentialState:
    """Pull a spatial state back to its referential description."""
    return ReferentialState(
        F=state.F,
        theta=state.theta,
        w=pull_back_electric(state.F, state.em),
        g_ref=pull_back_tempgrad(state.F, state.g),
    )


def to_spatial(rstate: ReferentialState) -> MaterialState:
    """Push a referential state forward to its spatial description."""
    finv_t = inverse(rstate.F).T
    return MaterialState(
        F=rstate.F,
        theta=rstate.theta,
        em=finv_t @ rstate.w,
        g=finv_t @ rstate.g_ref,
    )
