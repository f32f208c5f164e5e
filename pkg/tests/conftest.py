"""Shared fixtures: one fully coupled material and one decoupled material
with closed-form responses, plus the matching conduction models."""

import pytest

from duhem.linalg import Mat3, Vec3
from duhem.materials import FourierHeatModel, PiezoTensor, QuadraticCoupledModel

THETA0 = 293.15

PIEZO_NESTED = [
    [[0.0, 0.05, 0.02], [0.05, 0.01, 0.0], [0.02, 0.0, -0.03]],
    [[0.02, 0.0, 0.01], [0.0, -0.04, 0.03], [0.01, 0.03, 0.0]],
    [[-0.01, 0.02, 0.0], [0.02, 0.0, 0.05], [0.0, 0.05, 0.02]],
]


@pytest.fixture(scope="session")
def model() -> QuadraticCoupledModel:
    """Fully coupled: anisotropic susceptibility, pyroelectric and
    piezoelectric terms all active."""
    return QuadraticCoupledModel(
        lam=1.2,
        mu=0.8,
        c=2.5,
        theta0=THETA0,
        beta=0.3,
        chi=Mat3(1.0, 0.1, 0.0, 0.1, 0.8, 0.05, 0.0, 0.05, 1.2),
        pyro=Vec3(0.02, -0.04, 0.01),
        piezo=PiezoTensor.from_nested(PIEZO_NESTED),
        rho_ref=2.7,
    )


@pytest.fixture(scope="session")
def heat(model) -> FourierHeatModel:
    return FourierHeatModel(
        kappa=Mat3(1.0, 0.2, 0.0, 0.2, 0.9, 0.1, 0.0, 0.1, 1.1),
        scaling="inverse-temperature",
        k0=1.0,
        theta_ref=model.theta0,
    )


@pytest.fixture(scope="session")
def decoupled_model() -> QuadraticCoupledModel:
    """Isotropic susceptibility, no pyroelectric or piezoelectric coupling:
    every response has a short closed form."""
    return QuadraticCoupledModel(
        lam=1.2,
        mu=0.8,
        c=1.0,
        theta0=5.0,
        beta=0.0,
        chi=Mat3.identity(),
        pyro=Vec3.zero(),
        piezo=PiezoTensor.zero(),
        rho_ref=2.0,
    )


@pytest.fixture(scope="session")
def constant_heat() -> FourierHeatModel:
    return FourierHeatModel(kappa=Mat3.identity(), scaling="constant")


def assert_vec_close(a: Vec3, b: Vec3, tol: float = 1e-12):
    err = (a - b).norm_inf()
    assert err <= tol, f"vectors differ by {err}: {a} vs {b}"


def assert_mat_close(a: Mat3, b: Mat3, tol: float = 1e-12):
    err = (a - b).norm_inf()
    assert err <= tol, f"matrices differ by {err}: {a} vs {b}"
