"""Verification suite: every thermodynamic restriction as a named check.

Each check samples states (or walks process grids), measures a residual
that the theory says must vanish or stay nonpositive, and returns a
CheckReport with the worst case. A report passes exactly when its maximum
residual is within its tolerance. All sampling derives from the run seed,
so reruns are byte-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, NamedTuple

from .fdiff import fd_gradient
from .kinematics import (
    Densities,
    MaterialState,
    ReferentialState,
    StateRates,
    green_lagrange,
    piola_vector,
    pull_back_electric,
    pull_back_tempgrad,
    to_spatial,
    velocity_gradient,
)
from .linalg import Mat3, Vec3, ddot, det, inverse, outer
from .materials import (
    FourierHeatModel,
    QuadraticCoupledModel,
    response_rates,
)
from .processes import (
    AffineProcess,
    ProcessSample,
    flux_divergence,
    run_process,
    stress_divergence,
)
from .sampling import (
    derive_rng,
    rand_deformation,
    rand_rates,
    rand_referential_rates,
    rand_referential_state,
    rand_rotation,
    rand_state,
    rand_vector,
)

__all__ = [
    "CheckReport",
    "VerifyContext",
    "ALL_CHECKS",
    "DEFAULT_TOLERANCES",
    "run_checks",
    "dissipation_residual_spatial",
    "dissipation_residual_referential",
    "sample_diagnostics",
    "SampleDiagnostics",
]

FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named check; passes iff max_residual <= tolerance."""

    name: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool
    worst_input: str
    notes: dict = field(default_factory=dict)

    @staticmethod
    def build(name, samples, max_residual, tolerance, worst_input, notes=None):
        return CheckReport(
            name=name,
            samples=samples,
            max_residual=max_residual,
            tolerance=tolerance,
            passed=max_residual <= tolerance,
            worst_input=worst_input,
            notes=notes or {},
        )


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _fmt_vec(v: Vec3) -> str:
    return "(" + ", ".join(_fmt(c) for c in v) + ")"


def _fmt_mat(m: Mat3) -> str:
    return "(" + ", ".join(_fmt_vec(Vec3(*row)) for row in m.rows()) + ")"


def describe_state(st: MaterialState) -> str:
    return f"F={_fmt_mat(st.F)} theta={_fmt(st.theta)} em={_fmt_vec(st.em)} g={_fmt_vec(st.g)}"


def describe_referential(st: ReferentialState) -> str:
    return f"F={_fmt_mat(st.F)} theta={_fmt(st.theta)} W={_fmt_vec(st.w)} G={_fmt_vec(st.g_ref)}"


def describe_sample(proc_name: str, sample: ProcessSample) -> str:
    return f"process={proc_name} t={_fmt(sample.t)} X={_fmt_vec(sample.x_ref)}"


# ---- dissipation residuals ------------------------------------------------


def dissipation_residual_spatial(
    model: QuadraticCoupledModel,
    heat: FourierHeatModel,
    state: MaterialState,
    rates: StateRates,
    dens: Densities | None = None,
):
    """Spatial dissipation-inequality residual at one (state, rates) pair.

    Returns (residual, flux, scale) where flux = (1/theta) q . g. The
    free-energy rate comes from the exact chain rule through the analytic
    partials; entropy, stress, and polarization come from the (possibly
    corrupted) model response methods, so any inconsistency between the
    stored energy and the responses shows up as residual - flux != 0.
    The stress working uses the trace pairing tr(tau grad v), which is the
    pairing under which the energetic terms cancel exactly.
    """
    if dens is None:
        dens = Densities.from_deformation(model.rho_ref, state.F)
    f, theta, em, g = state.F, state.theta, state.em, state.g
    e = green_lagrange(f)
    w = pull_back_electric(f, em)
    d_e, d_theta, d_w = model.psi_partials(e, theta, w)
    dpsi_df = f @ d_e + outer(em, d_w)
    psi_dot = (
        ddot(dpsi_df, rates.f_dot)
        + d_theta * rates.theta_dot
        + (f @ d_w).dot(rates.em_dot)
    )
    eta = model.entropy(state)
    pol = model.polarization(state, dens)
    tau = model.cauchy_stress(state, dens)
    q = heat.heat_flux(state)
    grad_v = velocity_gradient(f, rates.f_dot)
    flux = q.dot(g) / theta
    stress_working = ddot(tau.T, grad_v)
    term_energy = dens.rho * (psi_dot + eta * rates.theta_dot)
    term_pol = dens.rho * pol.pi.dot(rates.em_dot)
    residual = term_energy - stress_working + flux + term_pol
    scale = max(1.0, abs(term_energy), abs(stress_working), abs(flux), abs(term_pol))
    return residual, flux, scale


def dissipation_residual_referential(
    model: QuadraticCoupledModel,
    heat: FourierHeatModel,
    rstate: ReferentialState,
    rates: StateRates,
):
    """Referential dissipation-inequality residual.

    ``rates`` carries (f_dot, theta_dot, w_dot, g_ref_dot) with the vector
    slots em_dot and g_dot holding the referential rates. Returns
    (residual, flux, scale) with flux = (1/theta) Q . G.
    """
    f, theta, w, g_ref = rstate.F, rstate.theta, rstate.w, rstate.g_ref
    w_dot = rates.em_dot
    e = green_lagrange(f)
    d_e, d_theta, d_w = model.psi_partials(e, theta, w)
    psi_dot = (
        ddot(f @ d_e, rates.f_dot)
        + d_theta * rates.theta_dot
        + d_w.dot(w_dot)
    )
    eta = -d_theta
    s = model.referential_stress(rstate)
    p_ref = -model.rho_ref * d_w
    spatial = to_spatial(rstate)
    big_q = piola_vector(f, heat.heat_flux(spatial))
    flux = big_q.dot(g_ref) / theta
    term_energy = model.rho_ref * (psi_dot + eta * rates.theta_dot)
    stress_working = ddot(s, rates.f_dot)
    term_pol = p_ref.dot(w_dot)
    residual = term_energy - stress_working + flux + term_pol
    scale = max(1.0, abs(term_energy), abs(stress_working), abs(flux), abs(term_pol))
    return residual, flux, scale


# ---- per-sample process diagnostics ----------------------------------------


class SampleDiagnostics(NamedTuple):
    """Derived second-law quantities at one process sample."""

    delta0: float
    delta0_scaled: float
    entropy_residual: float
    entropy_scaled: float
    link_scaled: float
    momentum_scaled: float
    energy_scaled: float
    dissipation_residual: float
    dissipation_gap_scaled: float
    qg: float


def sample_diagnostics(
    proc: AffineProcess,
    model: QuadraticCoupledModel,
    heat: FourierHeatModel,
    sample: ProcessSample,
) -> SampleDiagnostics:
    state, rates = sample.state, sample.rates
    dens = Densities.from_deformation(model.rho_ref, state.F)
    rho, theta = dens.rho, state.theta
    rr = response_rates(model, state, rates)
    div_q = flux_divergence(proc, heat, sample.x_ref, sample.t)
    div_tau = stress_divergence(proc, model, sample.x_ref, sample.t)

    # Internal dissipation delta0 = theta etadot - (r - div q / rho).
    t_eta = theta * rr.eta_dot
    t_div = div_q / rho
    delta0 = t_eta - sample.r + t_div
    delta0_scaled = abs(delta0) / max(1.0, abs(t_eta), abs(sample.r), abs(t_div))

    # Entropy equality rho etadot = rho r / theta - div q / theta.
    a1 = rho * rr.eta_dot
    a2 = rho * sample.r / theta
    a3 = div_q / theta
    entropy_residual = a1 - a2 + a3
    entropy_scaled = abs(entropy_residual) / max(1.0, abs(a1), abs(a2), abs(a3))

    # Definitional link: entropy residual = (rho / theta) delta0.
    link = entropy_residual - (rho / theta) * delta0
    link_scaled = abs(link) / max(1.0, abs((rho / theta) * delta0))

    # Momentum closure with the back-solved body force.
    accel = proc.acceleration(sample.x_ref, sample.t)
    mom = rho * accel - div_tau - rho * sample.b
    momentum_scaled = mom.norm_inf() / max(
        1.0, (rho * accel).norm_inf(), div_tau.norm_inf(), (rho * sample.b).norm_inf()
    )

    # Energy closure with the back-solved heat supply.
    resp = sample.response
    grad_v = velocity_gradient(state.F, rates.f_dot)
    working = ddot(resp.tau.T, grad_v)
    e1 = rho * rr.eps_dot
    e4 = rho * state.em.dot(rr.pi_dot)
    e5 = rho * sample.r
    energy_res = e1 - working + div_q - e4 - e5
    energy_scaled = abs(energy_res) / max(1.0, abs(e1), abs(working), abs(div_q), abs(e4), abs(e5))

    diss_res, diss_flux, diss_scale = dissipation_residual_spatial(model, heat, state, rates, dens)
    gap = max(abs(diss_res - diss_flux), max(0.0, diss_res)) / diss_scale

    return SampleDiagnostics(
        delta0=delta0,
        delta0_scaled=delta0_scaled,
        entropy_residual=entropy_residual,
        entropy_scaled=entropy_scaled,
        link_scaled=link_scaled,
        momentum_scaled=momentum_scaled,
        energy_scaled=energy_scaled,
        dissipation_residual=diss_res,
        dissipation_gap_scaled=gap,
        qg=resp.q.dot(state.g),
    )


# ---- context ----------------------------------------------------------------


@dataclass
class VerifyContext:
    """Everything a check needs: models, process set, grid, seed, counts,
    and per-check tolerance overrides."""

    model: QuadraticCoupledModel
    heat: FourierHeatModel
    processes: dict
    times: list
    points: list
    seed: int
    samples: int = 10000
    rotations: int = 1000
    tolerances: dict = field(default_factory=dict)

    def tolerance(self, name: str) -> float:
        return self.tolerances.get(name, DEFAULT_TOLERANCES[name])

    def rng(self, label: str):
        return derive_rng(self.seed, label)

    @cached_property
    def process_diagnostics(self) -> list:
        """(process name, sample, diagnostics) for every grid sample of
        every process, computed once and shared by the process checks."""
        out = []
        for name in sorted(self.processes):
            proc = self.processes[name]
            for sample in run_process(proc, self.model, self.heat, self.points, self.times):
                out.append((name, sample, sample_diagnostics(proc, self.model, self.heat, sample)))
        return out


# ---- state-sampling checks --------------------------------------------------


def check_free_energy_restrictions(ctx: VerifyContext) -> CheckReport:
    """Entropy, polarization, and Cauchy stress against finite differences
    of the spatial free energy in all thirteen arguments."""
    name = "free-energy-restrictions"
    rng = ctx.rng(name)
    tol = ctx.tolerance(name)
    model = ctx.model
    worst, worst_state = -1.0, None
    for _ in range(ctx.samples):
        st = rand_state(rng, model.theta0)
        dens = Densities.from_deformation(model.rho_ref, st.F)
        g = st.g

        def psi_of(v):
            return model.psi_bar(Mat3(*v[:9]), v[9], Vec3(v[10], v[11], v[12]), g)

        r = st.F.rows()
        grad = fd_gradient(psi_of, [*r[0], *r[1], *r[2], st.theta, st.em.x, st.em.y, st.em.z])
        g_f = Mat3(*grad[:9])
        eta = model.entropy(st)
        pol = model.polarization(st, dens)
        tau = model.cauchy_stress(st, dens)
        tau_fd = dens.rho * (st.F @ g_f.T)
        m = _rel(eta, -grad[9])
        for a, b in zip(pol.pi, (-grad[10], -grad[11], -grad[12])):
            m = max(m, _rel(a, b))
        for n_ in Mat3.__slots__:
            m = max(m, _rel(getattr(tau, n_), getattr(tau_fd, n_)))
        if m > worst:
            worst, worst_state = m, st
    return CheckReport.build(name, ctx.samples, worst, tol, describe_state(worst_state))


def check_referential_restrictions(ctx: VerifyContext) -> CheckReport:
    """Referential entropy, polarization, and nominal stress against finite
    differences of the referential free energy (F, theta, W)."""
    name = "referential-restrictions"
    rng = ctx.rng(name)
    tol = ctx.tolerance(name)
    model = ctx.model
    worst, worst_state = -1.0, None
    for _ in range(ctx.samples):
        rst = rand_referential_state(rng, model.theta0)

        def psi_of(v):
            return model.psi_hat(Mat3(*v[:9]), v[9], Vec3(v[10], v[11], v[12]))

        r = rst.F.rows()
        grad = fd_gradient(psi_of, [*r[0], *r[1], *r[2], rst.theta, rst.w.x, rst.w.y, rst.w.z])
        s = model.referential_stress(rst)
        s_fd = model.rho_ref * Mat3(*grad[:9])
        spatial = to_spatial(rst)
        eta = model.entropy(spatial)
        pi_ref = model.polarization(spatial).pi_ref
        m = _rel(eta, -grad[9])
        for a, b in zip(pi_ref, (-grad[10], -grad[11], -grad[12])):
            m = max(m, _rel(a, b))
        for n_ in Mat3.__slots__:
            m = max(m, _rel(getattr(s, n_), getattr(s_fd, n_)))
        if m > worst:
            worst, worst_state = m, rst
    return CheckReport.build(name, ctx.samples, worst, tol, describe_referential(worst_state))


def check_gradient_independence(ctx: VerifyContext) -> CheckReport:
    """The free energy must not respond to the temperature gradient."""
    name = "gradient-independence"
    rng = ctx.rng(name)
    tol = ctx.tolerance(name)
    model = ctx.model
    worst, worst_state = -1.0, None
    for _ in range(ctx.samples):
        st = rand_state(rng, model.theta0)
        base = model.psi_bar(st.F, st.theta, st.em, st.g)
        m = 0.0
        for _ in range(3):
            probe = st.g + rand_vector(rng)
            m = max(m, abs(model.psi_bar(st.F, st.theta, st.em, probe) - base))
        if m > worst:
            worst, worst_state = m, st
    return CheckReport.build(name, ctx.samples, worst, tol, describe_state(worst_state))


def check_antisymmetric_stress(ctx: VerifyContext) -> CheckReport:
    """skew(tau) must equal (em (x) P - P (x) em) / 2."""
    name = "antisymmetric-stress"
    rng = ctx.rng(name)
    tol = ctx.tolerance(name)
    model = ctx.model
    worst, worst_state = -1.0, None
    for _ in range(ctx.samples):
        st = rand_state(rng, model.theta0)
        dens = Densities.from_deformation(model.rho_ref, st.F)
        tau = model.cauchy_stress(st, dens)
        p = model.polarization(st, dens).p
        expected = 0.5 * (outer(st.em, p) - outer(p, st.em))
        skew = tau.skew()
        scale = max(1.0, tau.norm_inf())
        m = (skew - expected).norm_inf() / scale
        if m > worst:
            worst, worst_state = m, st
    return CheckReport.build(name, ctx.samples, worst, tol, describe_state(worst_state))


def check_objectivity(ctx: VerifyContext) -> CheckReport:
    """Free energy invariance and stress/polarization equivariance under
    superposed proper rotations."""
    name = "objectivity"
    rng = ctx.rng(name)
    tol = ctx.tolerance(name)
    model = ctx.model
    worst, worst_state = -1.0, None
    for _ in range(ctx.rotations):
        st = rand_state(rng, model.theta0)
        rot = rand_rotation(rng)
        st_rot = MaterialState(F=rot @ st.F, theta=st.theta, em=rot @ st.em, g=rot @ st.g)
        dens = Densities.from_deformation(model.rho_ref, st.F)
        m = _rel(model.free_energy(st_rot), model.free_energy(st))
        tau = model.cauchy_stress(st, dens)
        tau_rot = model.cauchy_stress(st_rot, dens)
        expected_tau = rot @ tau @ rot.T
        scale = max(1.0, tau.norm_inf())
        m = max(m, (tau_rot - expected_tau).norm_inf() / scale)
        pi = model.polarization(st, dens).pi
        pi_rot = model.polarization(st_rot, dens).pi
        m = max(m, (pi_rot - rot @ pi).norm_inf() / max(1.0, pi.norm_inf()))
        if m > worst:
            worst, worst_state = m, st
    return CheckReport.build(name, ctx.rotations, worst, tol, describe_state(worst_state))


def check_transform_identities(ctx: VerifyContext) -> CheckReport:
    """Pull-back pairings and displacement transform linearity:
    Q . G = det(F) q . g, W . Pi = em . pi, and both routes to the
    referential electric displacement agree."""
    name = "transform-identities"
    rng = ctx.rng(name)
    tol = ctx.tolerance(name)
    model, heat = ctx.model, ctx.heat
    worst, worst_state = -1.0, None
    for _ in range(ctx.samples):
        st = rand_state(rng, model.theta0)
        dens = Densities.from_deformation(model.rho_ref, st.F)
        j = det(st.F)
        q = heat.heat_flux(st)
        big_q = piola_vector(st.F, q)
        g_ref = pull_back_tempgrad(st.F, st.g)
        m = _rel(big_q.dot(g_ref), j * q.dot(st.g))
        pol = model.polarization(st, dens)
        w = pull_back_electric(st.F, st.em)
        m = max(m, _rel(w.dot(pol.pi_ref), st.em.dot(pol.pi)))
        lhs = piola_vector(st.F, st.em + FOUR_PI * pol.p)
        rhs = piola_vector(st.F, st.em) + FOUR_PI * pol.p_ref
        m = max(m, (lhs - rhs).norm_inf() / max(1.0, lhs.norm_inf(), rhs.norm_inf()))
        if m > worst:
            worst, worst_state = m, st
    return CheckReport.build(name, ctx.samples, worst, tol, describe_state(worst_state))


def check_stress_power_pairing(ctx: VerifyContext) -> CheckReport:
    """Cross-description stress power.

    On spin-free rates (grad v symmetric) the referential pairing
    ddot(J tau F^-T, F_dot) must reproduce J ddot(tau, grad v) exactly. On
    spinning rates the two pairings of the working differ by twice the
    contraction of the antisymmetric stress with the spin; the check
    asserts that algebraic decomposition and reports the observed gap in
    the notes rather than failing on it.
    """
    name = "stress-power-pairing"
    rng = ctx.rng(name)
    tol = ctx.tolerance(name)
    model = ctx.model
    worst, worst_state = -1.0, None
    max_gap = 0.0
    for _ in range(ctx.samples):
        st = rand_state(rng, model.theta0)
        dens = Densities.from_deformation(model.rho_ref, st.F)
        tau = model.cauchy_stress(st, dens)
        j = det(st.F)
        nominal = j * (tau @ inverse(st.F).T)

        # Spin-free sample: F_dot = D F with D symmetric gives grad v = D.
        d_sym = Mat3(*(rng.uniform(-1.0, 1.0) for _ in range(9))).sym()
        f_dot = d_sym @ st.F
        grad_v = velocity_gradient(st.F, f_dot)
        lhs = ddot(nominal, f_dot)
        rhs = j * ddot(tau, grad_v)
        m = _rel(lhs, rhs)

        # Spinning sample: the pairing gap equals 2 J ddot(skew tau, skew L).
        f_dot2 = Mat3(*(rng.uniform(-1.0, 1.0) for _ in range(9)))
        grad_v2 = velocity_gradient(st.F, f_dot2)
        lhs2 = ddot(nominal, f_dot2)
        trace_working = j * ddot(tau.T, grad_v2)
        predicted_gap = 2.0 * j * ddot(tau.skew(), grad_v2.skew())
        m = max(m, _rel(lhs2 - trace_working, predicted_gap))
        max_gap = max(max_gap, abs(lhs2 - trace_working))
        if m > worst:
            worst, worst_state = m, st
    return CheckReport.build(
        name, ctx.samples, worst, tol, describe_state(worst_state),
        notes={"max_spin_pairing_gap": max_gap},
    )


def check_dissipation_spatial(ctx: VerifyContext) -> CheckReport:
    """Spatial dissipation residual must equal (1/theta) q . g and stay
    nonpositive on random states and rates."""
    name = "dissipation-spatial"
    rng = ctx.rng(name)
    tol = ctx.tolerance(name)
    model, heat = ctx.model, ctx.heat
    worst, worst_state = -1.0, None
    for _ in range(ctx.samples):
        st = rand_state(rng, model.theta0)
        rates = rand_rates(rng)
        res, flux, scale = dissipation_residual_spatial(model, heat, st, rates)
        m = max(abs(res - flux), max(0.0, res)) / scale
        if m > worst:
            worst, worst_state = m, st
    return CheckReport.build(name, ctx.samples, worst, tol, describe_state(worst_state))


def check_dissipation_referential(ctx: VerifyContext) -> CheckReport:
    """Referential dissipation residual must equal (1/theta) Q . G and stay
    nonpositive on random referential states and rates."""
    name = "dissipation-referential"
    rng = ctx.rng(name)
    tol = ctx.tolerance(name)
    model, heat = ctx.model, ctx.heat
    worst, worst_state = -1.0, None
    for _ in range(ctx.samples):
        rst = rand_referential_state(rng, model.theta0)
        rates = rand_referential_rates(rng)
        res, flux, scale = dissipation_residual_referential(model, heat, rst, rates)
        m = max(abs(res - flux), max(0.0, res)) / scale
        if m > worst:
            worst, worst_state = m, rst
    return CheckReport.build(name, ctx.samples, worst, tol, describe_referential(worst_state))


def check_static_heat_flux(ctx: VerifyContext) -> CheckReport:
    """Vanishing temperature gradient must produce exactly zero heat flux
    in both descriptions."""
    name = "static-heat-flux"
    rng = ctx.rng(name)
    tol = ctx.tolerance(name)
    model, heat = ctx.model, ctx.heat
    worst, worst_state = -1.0, None
    for _ in range(ctx.samples):
        base = rand_state(rng, model.theta0)
        st = MaterialState(F=base.F, theta=base.theta, em=base.em, g=Vec3.zero())
        q = heat.heat_flux(st)
        big_q = piola_vector(st.F, q)
        m = max(q.norm_inf(), big_q.norm_inf())
        if m > worst:
            worst, worst_state = m, st
    return CheckReport.build(name, ctx.samples, worst, tol, describe_state(worst_state))


def check_conduction_inequality(ctx: VerifyContext) -> CheckReport:
    """Heat conduction inequality q . g <= 0 (and Q . G <= 0) on random
    states; catches indefinite conductivities."""
    name = "conduction-inequality"
    rng = ctx.rng(name)
    tol = ctx.tolerance(name)
    model, heat = ctx.model, ctx.heat
    worst, worst_state = -1.0, None
    for _ in range(ctx.samples):
        st = rand_state(rng, model.theta0)
        q = heat.heat_flux(st)
        big_q = piola_vector(st.F, q)
        g_ref = pull_back_tempgrad(st.F, st.g)
        m = max(0.0, q.dot(st.g), big_q.dot(g_ref))
        if m > worst:
            worst, worst_state = m, st
    return CheckReport.build(name, ctx.samples, worst, tol, describe_state(worst_state))


# ---- process checks ---------------------------------------------------------


def _process_check(ctx: VerifyContext, name: str, metric: Callable) -> CheckReport:
    tol = ctx.tolerance(name)
    worst, worst_desc = -1.0, ""
    count = 0
    for proc_name, sample, diag in ctx.process_diagnostics:
        count += 1
        m = metric(diag)
        if m > worst:
            worst, worst_desc = m, describe_sample(proc_name, sample)
    return CheckReport.build(name, count, worst, tol, worst_desc)


def check_internal_dissipation(ctx: VerifyContext) -> CheckReport:
    """Internal dissipation delta0 = theta etadot - (r - div q / rho) must
    vanish along every constructed admissible process."""
    return _process_check(ctx, "internal-dissipation", lambda d: d.delta0_scaled)


def check_entropy_equality(ctx: VerifyContext) -> CheckReport:
    """The entropy balance must hold with equality along every constructed
    admissible process."""
    return _process_check(ctx, "entropy-equality", lambda d: d.entropy_scaled)


def check_entropy_dissipation_link(ctx: VerifyContext) -> CheckReport:
    """Definitional identity: the entropy-equality residual equals
    (rho / theta) delta0 at every sample."""
    return _process_check(ctx, "entropy-dissipation-link", lambda d: d.link_scaled)


def check_balance_closure(ctx: VerifyContext) -> CheckReport:
    """Momentum and energy balances close with the back-solved body force
    and heat supply at every sample."""
    return _process_check(
        ctx, "balance-closure", lambda d: max(d.momentum_scaled, d.energy_scaled)
    )


def check_process_dissipation(ctx: VerifyContext) -> CheckReport:
    """Along processes the dissipation residual must equal (1/theta) q . g
    and stay nonpositive."""
    return _process_check(ctx, "process-dissipation", lambda d: d.dissipation_gap_scaled)


ALL_CHECKS = {
    "free-energy-restrictions": check_free_energy_restrictions,
    "referential-restrictions": check_referential_restrictions,
    "gradient-independence": check_gradient_independence,
    "antisymmetric-stress": check_antisymmetric_stress,
    "objectivity": check_objectivity,
    "transform-identities": check_transform_identities,
    "stress-power-pairing": check_stress_power_pairing,
    "dissipation-spatial": check_dissipation_spatial,
    "dissipation-referential": check_dissipation_referential,
    "static-heat-flux": check_static_heat_flux,
    "conduction-inequality": check_conduction_inequality,
    "internal-dissipation": check_internal_dissipation,
    "entropy-equality": check_entropy_equality,
    "entropy-dissipation-link": check_entropy_dissipation_link,
    "balance-closure": check_balance_closure,
    "process-dissipation": check_process_dissipation,
}

DEFAULT_TOLERANCES = {
    "free-energy-restrictions": 1e-5,
    "referential-restrictions": 1e-5,
    "gradient-independence": 0.0,
    "antisymmetric-stress": 1e-12,
    "objectivity": 1e-12,
    "transform-identities": 1e-12,
    "stress-power-pairing": 1e-10,
    "dissipation-spatial": 1e-10,
    "dissipation-referential": 1e-10,
    "static-heat-flux": 0.0,
    "conduction-inequality": 0.0,
    "internal-dissipation": 1e-7,
    "entropy-equality": 1e-7,
    "entropy-dissipation-link": 1e-12,
    "balance-closure": 1e-8,
    "process-dissipation": 1e-7,
}


def run_checks(ctx: VerifyContext, names=None) -> list[CheckReport]:
    """Run the named checks (all, in registry order, when None)."""
    if names is None:
        names = list(ALL_CHECKS)
    unknown = [n for n in names if n not in ALL_CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    return [ALL_CHECKS[n](ctx) for n in names]
