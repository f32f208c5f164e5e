"""Constitutive models: free energy, derived responses, heat conduction.

The elastic/thermal/electric model is quadratic in Green-Lagrange strain E,
temperature offset theta - theta0, and the objective field variable
W = F^T em, with full thermo-electro-mechanical cross coupling. All derived
responses (entropy, stress, polarization) come from exact partial
derivatives of one scalar free energy, which is what the verification
suite checks against finite differences and along processes.

Every evaluation path is generic over the scalar type, so dual numbers can
be pushed through states and densities to obtain exact material time
derivatives of any response.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, NamedTuple

import numpy as np

from .dual import Dual
from .errors import InvalidTemperature
from .kinematics import (
    Densities,
    MaterialState,
    ReferentialState,
    StateRates,
    green_lagrange,
    piola_vector,
    pull_back_electric,
    pull_back_tempgrad,
)
from .linalg import Mat3, Vec3, ddot, outer

__all__ = [
    "PiezoTensor",
    "QuadraticCoupledModel",
    "FourierHeatModel",
    "Polarization",
    "ResponseSet",
    "ResponseRates",
    "full_response",
    "response_rates",
]


def _require_psd(m: Mat3, name: str):
    if not m.is_symmetric():
        raise ValueError(f"{name} must be symmetric")
    eigs = np.linalg.eigvalsh(np.array(m.rows(), dtype=float))
    floor = -1e-12 * max(1.0, m.norm_inf())
    if eigs[0] < floor:
        raise ValueError(f"{name} must be positive semidefinite (min eigenvalue {eigs[0]:g})")


@dataclass(frozen=True)
class PiezoTensor:
    """Third-order coupling tensor d[i][j][k], symmetric in (j, k)."""

    coeffs: tuple

    def __post_init__(self):
        c = self.coeffs
        if len(c) != 3 or any(len(p) != 3 or any(len(r) != 3 for r in p) for p in c):
            raise ValueError("piezo tensor must be 3x3x3")
        for i in range(3):
            for j in range(3):
                for k in range(j + 1, 3):
                    if c[i][j][k] != c[i][k][j]:
                        raise ValueError("piezo tensor must be symmetric in its last two indices")

    @staticmethod
    def from_nested(values) -> "PiezoTensor":
        return PiezoTensor(tuple(tuple(tuple(float(x) for x in row) for row in plane) for plane in values))

    @staticmethod
    def zero() -> "PiezoTensor":
        z = ((0.0,) * 3,) * 3
        return PiezoTensor((z, z, z))

    def contract_strain(self, e: Mat3) -> Vec3:
        """(d : E)_i = sum_jk d_ijk E_jk."""
        rows = e.rows()
        out = []
        for plane in self.coeffs:
            acc = 0.0
            for j in range(3):
                pj = plane[j]
                rj = rows[j]
                acc = acc + pj[0] * rj[0] + pj[1] * rj[1] + pj[2] * rj[2]
            out.append(acc)
        return Vec3(out[0], out[1], out[2])

    def contract_field(self, w: Vec3) -> Mat3:
        """(w . d)_jk = sum_i w_i d_ijk, symmetric in (j, k)."""
        d0, d1, d2 = self.coeffs
        comps = []
        for j in range(3):
            for k in range(3):
                comps.append(w.x * d0[j][k] + w.y * d1[j][k] + w.z * d2[j][k])
        return Mat3(*comps)


class Polarization(NamedTuple):
    """Polarization bundle: spatial per mass / per volume and their
    referential counterparts."""

    pi: Vec3
    p: Vec3
    p_ref: Vec3
    pi_ref: Vec3


@dataclass(frozen=True)
class QuadraticCoupledModel:
    """Quadratic coupled free energy.

    The stored energy per unit referential volume is

        U = lam/2 (tr E)^2 + mu E:E - c/(2 theta0) (theta - theta0)^2
            - beta (theta - theta0) tr E - 1/2 W . chi W
            - (theta - theta0) pyro . W - W . (piezo : E)

    and the free energy per unit mass is psi = U / rho_ref.

    Parameters
    ----------
    lam, mu : float
        Elastic moduli; mu must be positive.
    c : float
        Volumetric heat-capacity coefficient, positive.
    theta0 : float
        Reference temperature, positive.
    beta : float
        Thermal-stress coupling coefficient.
    chi : Mat3
        Electric susceptibility, symmetric positive semidefinite.
    pyro : Vec3
        Pyroelectric coupling vector.
    piezo : PiezoTensor
        Piezoelectric coupling, symmetric in its strain indices.
    rho_ref : float
        Referential mass density, positive.
    """

    lam: float
    mu: float
    c: float
    theta0: float
    beta: float
    chi: Mat3
    pyro: Vec3
    piezo: PiezoTensor
    rho_ref: float

    def __post_init__(self):
        if self.mu <= 0.0:
            raise ValueError("shear modulus mu must be positive")
        if self.c <= 0.0:
            raise ValueError("heat capacity coefficient c must be positive")
        if self.theta0 <= 0.0:
            raise ValueError("reference temperature theta0 must be positive")
        if self.rho_ref <= 0.0:
            raise ValueError("reference density rho_ref must be positive")
        _require_psd(self.chi, "susceptibility chi")

    # ---- free energy -----------------------------------------------------

    def psi_eval(self, e: Mat3, theta, w: Vec3):
        """Free energy per unit mass at strain ``e``, temperature ``theta``,
        objective field ``w``."""
        if theta <= 0.0:
            raise InvalidTemperature(f"absolute temperature must be positive (theta = {theta})")
        dt = theta - self.theta0
        tr = e.trace()
        u = (
            0.5 * self.lam * tr * tr
            + self.mu * ddot(e, e)
            - 0.5 * self.c / self.theta0 * dt * dt
            - self.beta * dt * tr
            - 0.5 * w.dot(self.chi @ w)
            - dt * self.pyro.dot(w)
            - w.dot(self.piezo.contract_strain(e))
        )
        return u / self.rho_ref

    def psi_partials(self, e: Mat3, theta, w: Vec3):
        """Exact partial derivatives (d/dE, d/dtheta, d/dW) of psi_eval.

        The strain derivative treats all nine components of ``e`` as
        independent, which on symmetric input yields the symmetric gradient
        used by the stress relations.
        """
        if theta <= 0.0:
            raise InvalidTemperature(f"absolute temperature must be positive (theta = {theta})")
        dt = theta - self.theta0
        tr = e.trace()
        diag = self.lam * tr - self.beta * dt
        d_e = (2.0 * self.mu) * e - self.piezo.contract_field(w)
        d_e = Mat3(
            d_e.xx + diag, d_e.xy, d_e.xz,
            d_e.yx, d_e.yy + diag, d_e.yz,
            d_e.zx, d_e.zy, d_e.zz + diag,
        ) / self.rho_ref
        d_theta = (-self.c / self.theta0 * dt - self.beta * tr - self.pyro.dot(w)) / self.rho_ref
        d_w = (-(self.chi @ w) - dt * self.pyro - self.piezo.contract_strain(e)) / self.rho_ref
        return d_e, d_theta, d_w

    def _energy_core(self, e00, e11, e22, e01, e02, e12, theta, w0, w1, w2):
        # Fused scalar evaluation shared by psi_bar and psi_hat; keeps the
        # finite-difference hot loops free of container allocation.
        dt = theta - self.theta0
        tr = e00 + e11 + e22
        ee = e00 * e00 + e11 * e11 + e22 * e22 + 2.0 * (e01 * e01 + e02 * e02 + e12 * e12)
        chi = self.chi
        wchiw = (
            w0 * (chi.xx * w0 + chi.xy * w1 + chi.xz * w2)
            + w1 * (chi.yx * w0 + chi.yy * w1 + chi.yz * w2)
            + w2 * (chi.zx * w0 + chi.zy * w1 + chi.zz * w2)
        )
        d0, d1, d2 = self.piezo.coeffs
        wde = 0.0
        for w_i, d_i in ((w0, d0), (w1, d1), (w2, d2)):
            wde = wde + w_i * (
                d_i[0][0] * e00 + d_i[1][1] * e11 + d_i[2][2] * e22
                + 2.0 * (d_i[0][1] * e01 + d_i[0][2] * e02 + d_i[1][2] * e12)
            )
        pyro = self.pyro
        u = (
            0.5 * self.lam * tr * tr
            + self.mu * ee
            - 0.5 * self.c / self.theta0 * dt * dt
            - self.beta * dt * tr
            - 0.5 * wchiw
            - dt * (pyro.x * w0 + pyro.y * w1 + pyro.z * w2)
            - wde
        )
        return u / self.rho_ref

    def psi_bar(self, f: Mat3, theta, em: Vec3, g: Vec3 | None = None):
        """Free energy as a function of the spatial arguments (F, theta, em).

        Composes psi_eval with E = (F^T F - I)/2 and W = F^T em. The spatial
        temperature gradient ``g`` is accepted but has no influence; the
        verification suite probes exactly this independence.
        """
        if theta <= 0.0:
            raise InvalidTemperature(f"absolute temperature must be positive (theta = {theta})")
        fxx, fxy, fxz = f.xx, f.xy, f.xz
        fyx, fyy, fyz = f.yx, f.yy, f.yz
        fzx, fzy, fzz = f.zx, f.zy, f.zz
        # Green-Lagrange strain from C = F^T F (six unique entries).
        e00 = (fxx * fxx + fyx * fyx + fzx * fzx - 1.0) * 0.5
        e11 = (fxy * fxy + fyy * fyy + fzy * fzy - 1.0) * 0.5
        e22 = (fxz * fxz + fyz * fyz + fzz * fzz - 1.0) * 0.5
        e01 = (fxx * fxy + fyx * fyy + fzx * fzy) * 0.5
        e02 = (fxx * fxz + fyx * fyz + fzx * fzz) * 0.5
        e12 = (fxy * fxz + fyy * fyz + fzy * fzz) * 0.5
        ex, ey, ez = em.x, em.y, em.z
        w0 = fxx * ex + fyx * ey + fzx * ez
        w1 = fxy * ex + fyy * ey + fzy * ez
        w2 = fxz * ex + fyz * ey + fzz * ez
        return self._energy_core(e00, e11, e22, e01, e02, e12, theta, w0, w1, w2)

    def psi_hat(self, f: Mat3, theta, w: Vec3):
        """Free energy as a function of the referential arguments
        (F, theta, W); W is independent of F here."""
        if theta <= 0.0:
            raise InvalidTemperature(f"absolute temperature must be positive (theta = {theta})")
        fxx, fxy, fxz = f.xx, f.xy, f.xz
        fyx, fyy, fyz = f.yx, f.yy, f.yz
        fzx, fzy, fzz = f.zx, f.zy, f.zz
        e00 = (fxx * fxx + fyx * fyx + fzx * fzx - 1.0) * 0.5
        e11 = (fxy * fxy + fyy * fyy + fzy * fzy - 1.0) * 0.5
        e22 = (fxz * fxz + fyz * fyz + fzz * fzz - 1.0) * 0.5
        e01 = (fxx * fxy + fyx * fyy + fzx * fzy) * 0.5
        e02 = (fxx * fxz + fyx * fyz + fzx * fzz) * 0.5
        e12 = (fxy * fxz + fyy * fyz + fzy * fzz) * 0.5
        return self._energy_core(e00, e11, e22, e01, e02, e12, theta, w.x, w.y, w.z)

    # ---- derived responses ----------------------------------------------

    def free_energy(self, state: MaterialState):
        return self.psi_bar(state.F, state.theta, state.em, state.g)

    def entropy(self, state: MaterialState):
        """Specific entropy eta = -dpsi/dtheta."""
        e = green_lagrange(state.F)
        w = pull_back_electric(state.F, state.em)
        _, d_theta, _ = self.psi_partials(e, state.theta, w)
        return -d_theta

    def polarization(self, state: MaterialState, dens: Densities | None = None) -> Polarization:
        """Polarization responses pi = -F dpsi/dW with per-volume and
        referential companions."""
        if dens is None:
            dens = Densities.from_deformation(self.rho_ref, state.F)
        e = green_lagrange(state.F)
        w = pull_back_electric(state.F, state.em)
        _, _, d_w = self.psi_partials(e, state.theta, w)
        pi = -(state.F @ d_w)
        p = dens.rho * pi
        p_ref = piola_vector(state.F, p)
        return Polarization(pi=pi, p=p, p_ref=p_ref, pi_ref=p_ref / dens.rho_ref)

    def cauchy_stress(self, state: MaterialState, dens: Densities | None = None) -> Mat3:
        """Cauchy stress tau = rho F (dpsi/dE) F^T - P (x) em.

        The energetic part is symmetrized (it is symmetric analytically), so
        the antisymmetric part of tau comes exactly from the polarization
        dyad.
        """
        if dens is None:
            dens = Densities.from_deformation(self.rho_ref, state.F)
        e = green_lagrange(state.F)
        w = pull_back_electric(state.F, state.em)
        d_e, _, d_w = self.psi_partials(e, state.theta, w)
        sym_part = (state.F @ d_e @ state.F.T).sym() * dens.rho
        p = dens.rho * (-(state.F @ d_w))
        return sym_part - outer(p, state.em)

    def referential_stress(self, rstate: ReferentialState) -> Mat3:
        """Nominal stress S = rho_ref dpsi_hat/dF = rho_ref F (dpsi/dE),
        with W held fixed as an independent referential variable."""
        e = green_lagrange(rstate.F)
        d_e, _, _ = self.psi_partials(e, rstate.theta, rstate.w)
        return self.rho_ref * (rstate.F @ d_e)


@dataclass(frozen=True)
class FourierHeatModel:
    """Linear heat conduction q = -k(theta) kappa g.

    ``kappa`` must be symmetric positive semidefinite so the conduction
    inequality q . g <= 0 holds for every state. The optional scalar factor
    is k(theta) = k0 (constant) or k(theta) = k0 * theta_ref / theta
    (inverse-temperature), both positive on admissible states.

    ``validate`` exists so the fault-injection harness can build a
    deliberately indefinite conductivity; regular construction keeps it on.
    """

    kappa: Mat3
    scaling: str = "constant"
    k0: float = 1.0
    theta_ref: float = 1.0
    validate: bool = True

    def __post_init__(self):
        if self.scaling not in ("constant", "inverse-temperature"):
            raise ValueError(f"unknown conductivity scaling {self.scaling!r}")
        if self.k0 <= 0.0:
            raise ValueError("conductivity factor k0 must be positive")
        if self.theta_ref <= 0.0:
            raise ValueError("conductivity reference temperature must be positive")
        if self.validate:
            _require_psd(self.kappa, "conductivity kappa")

    def conductivity(self, theta):
        if theta <= 0.0:
            raise InvalidTemperature(f"absolute temperature must be positive (theta = {theta})")
        if self.scaling == "constant":
            return self.k0
        return self.k0 * self.theta_ref / theta

    def heat_flux(self, state: MaterialState) -> Vec3:
        """Spatial heat flux at the state's temperature and gradient."""
        return -self.conductivity(state.theta) * (self.kappa @ state.g)

    def referential_heat_flux(self, state: MaterialState) -> Vec3:
        """Piola transform Q = det(F) F^-1 q of the spatial flux."""
        return piola_vector(state.F, self.heat_flux(state))


@dataclass(frozen=True)
class ResponseSet:
    """All constitutive responses at one state.

    Fields: free energy ``psi``, entropy ``eta``, Cauchy stress ``tau``,
    nominal stress ``S``, polarization per mass ``pi`` / per volume ``P``
    with referential companions ``Pi`` / ``P_ref``, heat fluxes ``q`` /
    ``Q``, and internal energy ``eps = psi + theta eta + em . pi``.
    """

    psi: Any
    eta: Any
    tau: Mat3
    S: Mat3
    pi: Vec3
    P: Vec3
    Pi: Vec3
    P_ref: Vec3
    q: Vec3
    Q: Vec3
    eps: Any


def full_response(
    model: QuadraticCoupledModel,
    heat: FourierHeatModel,
    state: MaterialState,
    dens: Densities | None = None,
) -> ResponseSet:
    """Evaluate every response of the model pair at one state."""
    if dens is None:
        dens = Densities.from_deformation(model.rho_ref, state.F)
    psi = model.free_energy(state)
    eta = model.entropy(state)
    pol = model.polarization(state, dens)
    tau = model.cauchy_stress(state, dens)
    w = pull_back_electric(state.F, state.em)
    s = model.referential_stress(
        ReferentialState(F=state.F, theta=state.theta, w=w, g_ref=pull_back_tempgrad(state.F, state.g))
    )
    q = heat.heat_flux(state)
    big_q = piola_vector(state.F, q)
    eps = psi + state.theta * eta + state.em.dot(pol.pi)
    return ResponseSet(
        psi=psi, eta=eta, tau=tau, S=s,
        pi=pol.pi, P=pol.p, Pi=pol.pi_ref, P_ref=pol.p_ref,
        q=q, Q=big_q, eps=eps,
    )


class ResponseRates(NamedTuple):
    """Material time derivatives of scalar and vector responses along a
    given state rate, computed exactly with dual numbers."""

    psi_dot: float
    eta_dot: float
    eps_dot: float
    pi_dot: Vec3
    p_dot: Vec3


def _deriv(s) -> float:
    return getattr(s, "deriv", 0.0)


def response_rates(
    model: QuadraticCoupledModel, state: MaterialState, rates: StateRates
) -> ResponseRates:
    """Exact rates of (psi, eta, eps, pi, P) along ``rates``.

    ``rates`` provides f_dot, theta_dot, em_dot (g_dot does not enter these
    responses). One dual-seeded evaluation yields every derivative.
    """
    f, fd = state.F, rates.f_dot
    dual_f = Mat3(*(Dual(getattr(f, n), getattr(fd, n)) for n in Mat3.__slots__))
    dual_theta = Dual(state.theta, rates.theta_dot)
    dual_em = Vec3(
        Dual(state.em.x, rates.em_dot.x),
        Dual(state.em.y, rates.em_dot.y),
        Dual(state.em.z, rates.em_dot.z),
    )
    dual_state = MaterialState(F=dual_f, theta=dual_theta, em=dual_em, g=state.g)
    dens = Densities.from_deformation(model.rho_ref, dual_f)
    psi = model.free_energy(dual_state)
    eta = model.entropy(dual_state)
    pol = model.polarization(dual_state, dens)
    eps = psi + dual_theta * eta + dual_em.dot(pol.pi)
    return ResponseRates(
        psi_dot=_deriv(psi),
        eta_dot=_deriv(eta),
        eps_dot=_deriv(eps),
        pi_dot=Vec3(*(_deriv(c) for c in pol.pi)),
        p_dot=Vec3(*(_deriv(c) for c in pol.p)),
    )
