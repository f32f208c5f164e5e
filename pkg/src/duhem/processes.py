"""Constructed admissible processes and balance-law back-solves.

A process prescribes an affine motion x = Y + A(t)(X - Y), an affine
temperature field theta = alpha(t) + (A^T a)(t) . (X - Y), and an affine
electric potential beta(t) + (A^T b)(t) . (X - Y). The spatial state it
induces is F = A(t), g = a(t), em = -b(t), uniform in space except for the
temperature itself. Body force and heat supply are then solved from the
momentum and energy balances so that every sample satisfies both balance
laws exactly; the verification suite measures whether the second-law
quantities vanish along them as the theory demands.

Path coefficients are cubic polynomials plus one sinusoid per component,
so first and second time derivatives are analytic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import NonInvertibleDeformation, NonPositiveTemperature, PhysicalStateError
from .fdiff import spatial_divergence_fd, spatial_matrix_divergence_fd
from .kinematics import (
    Densities,
    MaterialState,
    StateRates,
    velocity_gradient,
)
from .linalg import Mat3, Vec3, ddot, det, inverse
from .materials import (
    FourierHeatModel,
    QuadraticCoupledModel,
    ResponseSet,
    full_response,
    response_rates,
)

__all__ = [
    "ScalarPath",
    "VectorPath",
    "MatrixPath",
    "rotation_path",
    "AffineProcess",
    "ProcessSample",
    "ProcessSampleError",
    "body_force",
    "heating",
    "stress_divergence",
    "flux_divergence",
    "process_sample",
    "run_process",
    "default_processes",
    "default_grid",
]


class ProcessSampleError(PhysicalStateError):
    """One or more grid samples of a process were inadmissible."""

    def __init__(self, failures):
        self.failures = failures
        lines = [f"  t[{ti}], X[{xi}]: {msg}" for ti, xi, msg in failures]
        super().__init__("inadmissible process samples:\n" + "\n".join(lines))


def _poly_value(coeffs, t):
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _poly_rate(coeffs, t):
    acc = 0.0
    for k in range(len(coeffs) - 1, 0, -1):
        acc = acc * t + k * coeffs[k]
    return acc


def _poly_accel(coeffs, t):
    acc = 0.0
    for k in range(len(coeffs) - 1, 1, -1):
        acc = acc * t + k * (k - 1) * coeffs[k]
    return acc


@dataclass(frozen=True)
class ScalarPath:
    """c0 + c1 t + c2 t^2 + c3 t^3 + amp sin(omega t + phase)."""

    poly: tuple
    amp: float = 0.0
    omega: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if not 1 <= len(self.poly) <= 4:
            raise ValueError("polynomial part must have 1 to 4 coefficients")

    @staticmethod
    def constant(value: float) -> "ScalarPath":
        return ScalarPath(poly=(float(value),))

    def value(self, t: float) -> float:
        v = _poly_value(self.poly, t)
        if self.amp != 0.0:
            v += self.amp * math.sin(self.omega * t + self.phase)
        return v

    def rate(self, t: float) -> float:
        v = _poly_rate(self.poly, t)
        if self.amp != 0.0:
            v += self.amp * self.omega * math.cos(self.omega * t + self.phase)
        return v

    def accel(self, t: float) -> float:
        v = _poly_accel(self.poly, t)
        if self.amp != 0.0:
            v -= self.amp * self.omega * self.omega * math.sin(self.omega * t + self.phase)
        return v


@dataclass(frozen=True)
class VectorPath:
    """Three independent scalar paths forming a time-dependent vector."""

    paths: tuple

    def __post_init__(self):
        if len(self.paths) != 3:
            raise ValueError("vector path needs exactly 3 component paths")

    @staticmethod
    def constant(v: Vec3) -> "VectorPath":
        return VectorPath(tuple(ScalarPath.constant(c) for c in v))

    @staticmethod
    def zero() -> "VectorPath":
        return VectorPath.constant(Vec3.zero())

    def value(self, t: float) -> Vec3:
        return Vec3(*(p.value(t) for p in self.paths))

    def rate(self, t: float) -> Vec3:
        return Vec3(*(p.rate(t) for p in self.paths))

    def accel(self, t: float) -> Vec3:
        return Vec3(*(p.accel(t) for p in self.paths))


@dataclass(frozen=True)
class MatrixPath:
    """Nine independent scalar paths forming a time-dependent matrix
    (row-major component order)."""

    paths: tuple

    def __post_init__(self):
        if len(self.paths) != 9:
            raise ValueError("matrix path needs exactly 9 component paths")

    @staticmethod
    def constant(m: Mat3) -> "MatrixPath":
        return MatrixPath(tuple(ScalarPath.constant(getattr(m, n)) for n in Mat3.__slots__))

    def value(self, t: float) -> Mat3:
        return Mat3(*(p.value(t) for p in self.paths))

    def rate(self, t: float) -> Mat3:
        return Mat3(*(p.rate(t) for p in self.paths))

    def accel(self, t: float) -> Mat3:
        return Mat3(*(p.accel(t) for p in self.paths))


def rotation_path(axis: Vec3, omega: float) -> MatrixPath:
    """Rigid rotation about ``axis`` with angular rate ``omega``.

    Each component of the rotation matrix is n_i n_j + (delta_ij -
    n_i n_j) cos(omega t) + K_ij sin(omega t), folded into the single-
    sinusoid path form a sin(omega t + phase) + constant.
    """
    n = axis / (axis.dot(axis) ** 0.5)
    cross = Mat3(
        0.0, -n.z, n.y,
        n.z, 0.0, -n.x,
        -n.y, n.x, 0.0,
    )
    paths = []
    for i in range(3):
        for j in range(3):
            const = n[i] * n[j]
            cos_coeff = (1.0 if i == j else 0.0) - n[i] * n[j]
            sin_coeff = cross[i, j]
            amp = math.hypot(cos_coeff, sin_coeff)
            phase = math.atan2(cos_coeff, sin_coeff) if amp > 0.0 else 0.0
            paths.append(ScalarPath(poly=(const,), amp=amp, omega=omega, phase=phase))
    return MatrixPath(tuple(paths))


@dataclass(frozen=True)
class AffineProcess:
    """Affine motion, temperature, and potential coefficients.

    ``a_mat`` is the deformation coefficient A(t); ``alpha``/``a_vec`` the
    temperature baseline and referential gradient coefficient; ``beta``/
    ``b_vec`` the potential baseline and coefficient (the induced field is
    em = -b); ``anchor`` is the fixed material point Y. Temperatures at or
    below ``theta_min`` are rejected, never clamped.
    """

    name: str
    a_mat: MatrixPath
    alpha: ScalarPath
    a_vec: VectorPath
    b_vec: VectorPath
    beta: ScalarPath = ScalarPath.constant(0.0)
    anchor: Vec3 = Vec3.zero()
    theta_min: float = 1e-6

    def deformation(self, t: float) -> Mat3:
        f = self.a_mat.value(t)
        if det(f) <= 0.0:
            raise NonInvertibleDeformation(
                f"process {self.name!r}: det A(t) = {det(f)} at t = {t}"
            )
        return f

    def temperature(self, x_ref: Vec3, t: float) -> float:
        f = self.a_mat.value(t)
        theta = self.alpha.value(t) + (f.T @ self.a_vec.value(t)).dot(x_ref - self.anchor)
        if theta <= self.theta_min:
            raise NonPositiveTemperature(
                f"process {self.name!r}: theta = {theta} <= floor {self.theta_min} "
                f"at t = {t}, X = {x_ref.as_tuple()}"
            )
        return theta

    def state_at(self, x_ref: Vec3, t: float) -> MaterialState:
        """Spatial state induced at material point ``x_ref`` and time ``t``."""
        return MaterialState(
            F=self.deformation(t),
            theta=self.temperature(x_ref, t),
            em=-self.b_vec.value(t),
            g=self.a_vec.value(t),
        )

    def rates_at(self, x_ref: Vec3, t: float) -> StateRates:
        """Material time derivatives of the induced state variables."""
        f = self.a_mat.value(t)
        f_dot = self.a_mat.rate(t)
        a = self.a_vec.value(t)
        a_dot = self.a_vec.rate(t)
        theta_dot = self.alpha.rate(t) + (f_dot.T @ a + f.T @ a_dot).dot(x_ref - self.anchor)
        return StateRates(
            f_dot=f_dot,
            theta_dot=theta_dot,
            em_dot=-self.b_vec.rate(t),
            g_dot=a_dot,
        )

    def spatial_point(self, x_ref: Vec3, t: float) -> Vec3:
        return self.anchor + self.deformation(t) @ (x_ref - self.anchor)

    def material_point(self, x: Vec3, t: float) -> Vec3:
        return self.anchor + inverse(self.deformation(t)) @ (x - self.anchor)

    def velocity(self, x_ref: Vec3, t: float) -> Vec3:
        return self.a_mat.rate(t) @ (x_ref - self.anchor)

    def acceleration(self, x_ref: Vec3, t: float) -> Vec3:
        return self.a_mat.accel(t) @ (x_ref - self.anchor)


def _stress_field(proc: AffineProcess, model: QuadraticCoupledModel, t: float):
    dens = Densities.from_deformation(model.rho_ref, proc.deformation(t))

    def field(x: Vec3) -> Mat3:
        state = proc.state_at(proc.material_point(x, t), t)
        return model.cauchy_stress(state, dens)

    return field


def _flux_field(proc: AffineProcess, heat: FourierHeatModel, t: float):
    def field(x: Vec3) -> Vec3:
        state = proc.state_at(proc.material_point(x, t), t)
        return heat.heat_flux(state)

    return field


def stress_divergence(
    proc: AffineProcess, model: QuadraticCoupledModel, x_ref: Vec3, t: float
) -> Vec3:
    """div tau at the spatial image of ``x_ref`` by central differences."""
    x = proc.spatial_point(x_ref, t)
    return spatial_matrix_divergence_fd(_stress_field(proc, model, t), x)


def flux_divergence(
    proc: AffineProcess, heat: FourierHeatModel, x_ref: Vec3, t: float
) -> float:
    """div q at the spatial image of ``x_ref`` by central differences."""
    x = proc.spatial_point(x_ref, t)
    return spatial_divergence_fd(_flux_field(proc, heat, t), x)


def body_force(
    proc: AffineProcess,
    model: QuadraticCoupledModel,
    heat: FourierHeatModel,
    x_ref: Vec3,
    t: float,
) -> Vec3:
    """Body force balancing linear momentum at one sample.

    b = dv/dt - (div tau) / rho; the electric body-force term vanishes
    because the induced field em is spatially uniform.
    """
    dens = Densities.from_deformation(model.rho_ref, proc.deformation(t))
    div_tau = stress_divergence(proc, model, x_ref, t)
    return proc.acceleration(x_ref, t) - div_tau / dens.rho


def heating(
    proc: AffineProcess,
    model: QuadraticCoupledModel,
    heat: FourierHeatModel,
    x_ref: Vec3,
    t: float,
) -> float:
    """Heat supply balancing the energy equation at one sample.

    r = deps/dt - tr(tau grad v) / rho + (div q) / rho - em . dpi/dt.
    """
    state = proc.state_at(x_ref, t)
    rates = proc.rates_at(x_ref, t)
    dens = Densities.from_deformation(model.rho_ref, state.F)
    rr = response_rates(model, state, rates)
    tau = model.cauchy_stress(state, dens)
    grad_v = velocity_gradient(state.F, rates.f_dot)
    div_q = flux_divergence(proc, heat, x_ref, t)
    return (
        rr.eps_dot
        - ddot(tau.T, grad_v) / dens.rho
        + div_q / dens.rho
        - state.em.dot(rr.pi_dot)
    )


@dataclass(frozen=True)
class ProcessSample:
    """One evaluated grid point of a process: state, rates, responses, and
    the back-solved body force and heat supply."""

    t: float
    x_ref: Vec3
    state: MaterialState
    rates: StateRates
    response: ResponseSet
    b: Vec3
    r: float


def process_sample(
    proc: AffineProcess,
    model: QuadraticCoupledModel,
    heat: FourierHeatModel,
    x_ref: Vec3,
    t: float,
) -> ProcessSample:
    state = proc.state_at(x_ref, t)
    rates = proc.rates_at(x_ref, t)
    dens = Densities.from_deformation(model.rho_ref, state.F)
    return ProcessSample(
        t=t,
        x_ref=x_ref,
        state=state,
        rates=rates,
        response=full_response(model, heat, state, dens),
        b=body_force(proc, model, heat, x_ref, t),
        r=heating(proc, model, heat, x_ref, t),
    )


def run_process(
    proc: AffineProcess,
    model: QuadraticCoupledModel,
    heat: FourierHeatModel,
    points: Sequence[Vec3],
    times: Sequence[float],
) -> list[ProcessSample]:
    """Evaluate the process over the full grid, times ascending outer and
    points in configured order inner. Inadmissible samples are aggregated
    into one ProcessSampleError carrying every failing index."""
    samples = []
    failures = []
    for ti, t in enumerate(times):
        for xi, x_ref in enumerate(points):
            try:
                samples.append(process_sample(proc, model, heat, x_ref, t))
            except PhysicalStateError as exc:
                failures.append((ti, xi, str(exc)))
    if failures:
        raise ProcessSampleError(failures)
    return samples


def default_processes(theta0: float) -> dict:
    """Five canned admissible processes, from quiescent to fully coupled."""
    identity = MatrixPath.constant(Mat3.identity())

    rest = AffineProcess(
        name="rest",
        a_mat=identity,
        alpha=ScalarPath.constant(theta0),
        a_vec=VectorPath.zero(),
        b_vec=VectorPath.zero(),
    )

    # Diagonal stretch: spin-free (grad v symmetric), all couplings active.
    stretch = AffineProcess(
        name="uniaxial-stretch",
        a_mat=MatrixPath((
            ScalarPath(poly=(1.0, 0.2)), ScalarPath.constant(0.0), ScalarPath.constant(0.0),
            ScalarPath.constant(0.0), ScalarPath(poly=(1.0, -0.1)), ScalarPath.constant(0.0),
            ScalarPath.constant(0.0), ScalarPath.constant(0.0), ScalarPath(poly=(1.0, 0.05, 0.1)),
        )),
        alpha=ScalarPath(poly=(theta0, 0.05 * theta0)),
        a_vec=VectorPath((
            ScalarPath(poly=(0.8, 0.3)),
            ScalarPath.constant(-0.5),
            ScalarPath(poly=(0.3, -0.2)),
        )),
        b_vec=VectorPath((
            ScalarPath(poly=(0.4, 0.2)),
            ScalarPath(poly=(-0.3, 0.1)),
            ScalarPath.constant(0.25),
        )),
    )

    rotation = AffineProcess(
        name="rigid-rotation",
        a_mat=rotation_path(Vec3(1.0, 1.0, 0.5), omega=1.5),
        alpha=ScalarPath.constant(theta0),
        a_vec=VectorPath.zero(),
        b_vec=VectorPath.zero(),
    )

    thermal = AffineProcess(
        name="thermal-gradient",
        a_mat=MatrixPath((
            ScalarPath(poly=(1.0, 0.1)), ScalarPath.constant(0.0), ScalarPath.constant(0.0),
            ScalarPath.constant(0.0), ScalarPath(poly=(1.0, -0.05)), ScalarPath.constant(0.0),
            ScalarPath.constant(0.0), ScalarPath.constant(0.0), ScalarPath.constant(1.0),
        )),
        alpha=ScalarPath(poly=(theta0, 0.1 * theta0)),
        a_vec=VectorPath((
            ScalarPath(poly=(2.0, 0.5)),
            ScalarPath(poly=(-1.0, 0.2)),
            ScalarPath.constant(0.5),
        )),
        b_vec=VectorPath.zero(),
    )

    coupled = AffineProcess(
        name="fully-coupled",
        a_mat=MatrixPath((
            ScalarPath(poly=(1.0, 0.1), amp=0.05, omega=2.0, phase=0.3),
            ScalarPath(poly=(0.0, 0.15), amp=0.08, omega=2.0, phase=0.0),
            ScalarPath.constant(0.02),
            ScalarPath(poly=(0.0, -0.12), amp=0.06, omega=2.0, phase=1.2),
            ScalarPath(poly=(1.0, 0.05)),
            ScalarPath(poly=(0.0, 0.04)),
            ScalarPath.constant(-0.03),
            ScalarPath(poly=(0.0, 0.06), amp=0.04, omega=2.0, phase=0.7),
            ScalarPath(poly=(1.0, 0.08, 0.05)),
        )),
        alpha=ScalarPath(poly=(theta0, 0.08 * theta0), amp=0.02 * theta0, omega=3.0, phase=0.0),
        a_vec=VectorPath((
            ScalarPath(poly=(1.0, 0.4)),
            ScalarPath(poly=(-0.6, 0.3), amp=0.2, omega=2.5, phase=0.5),
            ScalarPath.constant(0.7),
        )),
        b_vec=VectorPath((
            ScalarPath(poly=(0.5, 0.3)),
            ScalarPath(poly=(-0.4, -0.2), amp=0.15, omega=2.0, phase=0.2),
            ScalarPath(poly=(0.3, 0.1)),
        )),
    )

    return {
        p.name: p
        for p in (rest, stretch, rotation, thermal, coupled)
    }


def default_grid() -> tuple:
    """Default evaluation grid: 20 times in [0, 1], 5 material points."""
    times = [i / 19.0 for i in range(20)]
    points = [
        Vec3(0.0, 0.0, 0.0),
        Vec3(0.4, -0.2, 0.1),
        Vec3(-0.3, 0.5, -0.4),
        Vec3(0.2, 0.1, 0.6),
        Vec3(-0.5, -0.4, 0.3),
    ]
    return times, points
