"""Deliberate model corruptions for fault-injection testing.

Each fault overrides exactly one response path of an otherwise compliant
model, so each one is caught by a specific named verification check (see
``FAULT_CHECKS``). Faults are selected by name through the run
configuration's ``fault`` keys.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from .linalg import Mat3, outer
from .materials import FourierHeatModel, QuadraticCoupledModel

__all__ = [
    "MODEL_FAULTS",
    "HEAT_FAULTS",
    "FAULT_CHECKS",
    "apply_model_fault",
    "apply_heat_fault",
]


def _rebuild(model, cls):
    kwargs = {f.name: getattr(model, f.name) for f in dataclasses.fields(model)}
    return cls(**kwargs)


class _EntropySignFlip(QuadraticCoupledModel):
    """Entropy response with the wrong sign; the free energy is untouched,
    so the finite-difference restriction check sees the mismatch."""

    def entropy(self, state):
        return -super().entropy(state)


class _MissingPolarizationStress(QuadraticCoupledModel):
    """Cauchy stress without the polarization dyad -P (x) em."""

    def cauchy_stress(self, state, dens=None):
        from .kinematics import Densities

        if dens is None:
            dens = Densities.from_deformation(self.rho_ref, state.F)
        pol = self.polarization(state, dens)
        return super().cauchy_stress(state, dens) + outer(pol.p, state.em)


class _GradientDependentEnergy(QuadraticCoupledModel):
    """Free energy with an inadmissible temperature-gradient term."""

    def psi_bar(self, f, theta, em, g=None):
        base = super().psi_bar(f, theta, em, g)
        if g is None:
            return base
        return base + 0.01 * g.dot(g)


def _non_psd_conductivity(heat: FourierHeatModel) -> FourierHeatModel:
    """Shift the conductivity spectrum negative, bypassing validation."""
    eigs = np.linalg.eigvalsh(np.array(heat.kappa.rows(), dtype=float))
    shift = 1.5 * max(float(eigs[-1]), 1.0)
    bad = heat.kappa - Mat3.diag(shift, shift, shift)
    return dataclasses.replace(heat, kappa=bad, validate=False)


MODEL_FAULTS = {
    "entropy-sign-flip": _EntropySignFlip,
    "missing-polarization-stress": _MissingPolarizationStress,
    "gradient-dependent-energy": _GradientDependentEnergy,
}

HEAT_FAULTS = {
    "non-psd-conductivity": _non_psd_conductivity,
}

# Named check expected to catch each fault.
FAULT_CHECKS = {
    "entropy-sign-flip": "free-energy-restrictions",
    "missing-polarization-stress": "internal-dissipation",
    "gradient-dependent-energy": "gradient-independence",
    "non-psd-conductivity": "conduction-inequality",
}


def apply_model_fault(model: QuadraticCoupledModel, name: str) -> QuadraticCoupledModel:
    try:
        cls = MODEL_FAULTS[name]
    except KeyError:
        raise ValueError(f"unknown model fault {name!r}") from None
    return _rebuild(model, cls)


def apply_heat_fault(heat: FourierHeatModel, name: str) -> FourierHeatModel:
    try:
        builder = HEAT_FAULTS[name]
    except KeyError:
        raise ValueError(f"unknown heat fault {name!r}") from None
    return builder(heat)
