"""Affine processes: path algebra, induced states and rates, the rotation
path, admissibility guards, grid ordering, and the back-solved sources."""

import math

import pytest

from duhem.errors import NonPositiveTemperature
from duhem.kinematics import Densities, velocity_gradient
from duhem.linalg import Mat3, Vec3, ddot, det, inverse
from duhem.processes import (
    AffineProcess,
    MatrixPath,
    ProcessSampleError,
    ScalarPath,
    VectorPath,
    body_force,
    default_grid,
    default_processes,
    flux_divergence,
    heating,
    process_sample,
    rotation_path,
    run_process,
    stress_divergence,
)

from conftest import THETA0, assert_mat_close, assert_vec_close


class TestPaths:
    def test_scalar_path_value_rate_accel(self):
        p = ScalarPath(poly=(1.0, 2.0, 3.0, 4.0), amp=0.5, omega=2.0, phase=0.3)
        t = 0.7
        want = 1.0 + 2.0 * t + 3.0 * t**2 + 4.0 * t**3 + 0.5 * math.sin(2.0 * t + 0.3)
        assert p.value(t) == pytest.approx(want, rel=1e-15)
        h = 1e-6
        assert p.rate(t) == pytest.approx((p.value(t + h) - p.value(t - h)) / (2 * h), rel=1e-8)
        assert p.accel(t) == pytest.approx((p.rate(t + h) - p.rate(t - h)) / (2 * h), rel=1e-8)

    def test_constant_paths(self):
        assert ScalarPath.constant(5.0).value(3.3) == 5.0
        assert ScalarPath.constant(5.0).rate(3.3) == 0.0
        v = VectorPath.constant(Vec3(1.0, 2.0, 3.0))
        assert_vec_close(v.value(0.9), Vec3(1.0, 2.0, 3.0), 0.0)
        assert_vec_close(v.rate(0.9), Vec3.zero(), 0.0)
        m = MatrixPath.constant(Mat3.diag(1.0, 2.0, 3.0))
        assert_mat_close(m.value(1.2), Mat3.diag(1.0, 2.0, 3.0), 0.0)
        assert_mat_close(m.accel(1.2), Mat3.zero(), 0.0)

    def test_rotation_path_is_orthogonal(self):
        p = rotation_path(Vec3(1.0, 2.0, 0.5), omega=1.3)
        for t in (0.0, 0.3, 0.9, 2.0):
            R = p.value(t)
            assert_mat_close(R @ R.T, Mat3.identity(), 1e-12)
            assert det(R) == pytest.approx(1.0, rel=1e-12)
        assert_mat_close(p.value(0.0), Mat3.identity(), 1e-12)

    def test_rotation_path_rate(self):
        # Rdot R^T must be the constant spin tensor omega * K(axis)
        axis = Vec3(0.0, 0.0, 1.0)
        omega = 1.5
        p = rotation_path(axis, omega)
        for t in (0.2, 1.1):
            spin = p.rate(t) @ p.value(t).T
            want = Mat3(0.0, -omega, 0.0, omega, 0.0, 0.0, 0.0, 0.0, 0.0)
            assert_mat_close(spin, want, 1e-12)


class TestInducedFields:
    def _proc(self):
        return AffineProcess(
            name="test",
            a_mat=MatrixPath((
                ScalarPath(poly=(1.0, 0.2)), ScalarPath.constant(0.1), ScalarPath.constant(0.0),
                ScalarPath.constant(0.0), ScalarPath(poly=(1.0, -0.1)), ScalarPath.constant(0.0),
                ScalarPath.constant(0.0), ScalarPath.constant(0.0), ScalarPath.constant(1.0),
            )),
            alpha=ScalarPath(poly=(300.0, 15.0)),
            a_vec=VectorPath((
                ScalarPath(poly=(1.0, 0.5)),
                ScalarPath.constant(-0.8),
                ScalarPath.constant(0.2),
            )),
            b_vec=VectorPath.constant(Vec3(0.3, -0.1, 0.4)),
        )

    def test_state_fields(self):
        proc = self._proc()
        X, t = Vec3(0.5, -0.3, 0.2), 0.6
        st = proc.state_at(X, t)
        A = proc.a_mat.value(t)
        assert_mat_close(st.F, A, 0.0)
        # theta = alpha + (A^T a) . (X - Y)
        want_theta = proc.alpha.value(t) + (A.T @ proc.a_vec.value(t)).dot(X)
        assert st.theta == pytest.approx(want_theta, rel=1e-14)
        # the induced field is the negative potential coefficient
        assert_vec_close(st.em, -proc.b_vec.value(t), 0.0)
        # the spatial gradient is the coefficient vector itself
        assert_vec_close(st.g, proc.a_vec.value(t), 0.0)

    def test_temperature_is_affine_in_space(self):
        proc = self._proc()
        t = 0.4
        x0 = proc.spatial_point(Vec3.zero(), t)
        # theta(x) - theta(x0) = a . (x - x0) for spatial positions x
        a = proc.a_vec.value(t)
        for X in (Vec3(0.3, 0.1, -0.2), Vec3(-0.4, 0.5, 0.6)):
            x = proc.spatial_point(X, t)
            got = proc.temperature(X, t) - proc.temperature(Vec3.zero(), t)
            assert got == pytest.approx(a.dot(x - x0), rel=1e-12, abs=1e-13)

    def test_rates_match_time_fd(self):
        proc = self._proc()
        X, t, h = Vec3(0.5, -0.3, 0.2), 0.6, 1e-6
        r = proc.rates_at(X, t)
        sa, sb = proc.state_at(X, t - h), proc.state_at(X, t + h)
        assert_mat_close(r.f_dot, (sb.F - sa.F) / (2 * h), 1e-8)
        assert r.theta_dot == pytest.approx((sb.theta - sa.theta) / (2 * h), rel=1e-7)
        assert_vec_close(r.em_dot, (sb.em - sa.em) / (2 * h), 1e-8)
        assert_vec_close(r.g_dot, (sb.g - sa.g) / (2 * h), 1e-8)

    def test_motion_and_velocity(self):
        proc = self._proc()
        X, t, h = Vec3(0.5, -0.3, 0.2), 0.6, 1e-6
        x = proc.spatial_point(X, t)
        assert_vec_close(proc.material_point(x, t), X, 1e-12)
        v_fd = (proc.spatial_point(X, t + h) - proc.spatial_point(X, t - h)) / (2 * h)
        assert_vec_close(proc.velocity(X, t), v_fd, 1e-8)
        a_fd = (proc.velocity(X, t + h) - proc.velocity(X, t - h)) / (2 * h)
        assert_vec_close(proc.acceleration(X, t), a_fd, 1e-7)


class TestGuards:
    def test_temperature_floor_rejects(self):
        proc = AffineProcess(
            name="cold",
            a_mat=MatrixPath.constant(Mat3.identity()),
            alpha=ScalarPath(poly=(1.0, -2.0)),  # crosses zero at t = 0.5
            a_vec=VectorPath.zero(),
            b_vec=VectorPath.zero(),
        )
        proc.temperature(Vec3.zero(), 0.0)
        with pytest.raises(NonPositiveTemperature):
            proc.temperature(Vec3.zero(), 0.6)

    def test_run_process_aggregates_failures(self, model, heat):
        proc = AffineProcess(
            name="cold",
            a_mat=MatrixPath.constant(Mat3.identity()),
            alpha=ScalarPath(poly=(1.0, -2.0)),
            a_vec=VectorPath.zero(),
            b_vec=VectorPath.zero(),
        )
        with pytest.raises(ProcessSampleError) as err:
            run_process(proc, model, heat, [Vec3.zero()], [0.0, 0.2, 0.6, 0.9])
        # both late times recorded, with their grid indices
        assert [(ti, xi) for ti, xi, _ in err.value.failures] == [(2, 0), (3, 0)]


class TestDefaults:
    def test_catalog(self):
        procs = default_processes(THETA0)
        assert sorted(procs) == [
            "fully-coupled",
            "rest",
            "rigid-rotation",
            "thermal-gradient",
            "uniaxial-stretch",
        ]

    def test_all_admissible_on_default_grid(self, model, heat):
        times, points = default_grid()
        for proc in default_processes(model.theta0).values():
            samples = run_process(proc, model, heat, points, times)
            assert len(samples) == len(times) * len(points)

    def test_grid_ordering(self, model, heat):
        times, points = [0.0, 0.5, 1.0], [Vec3.zero(), Vec3(0.1, 0.0, 0.0)]
        proc = default_processes(model.theta0)["uniaxial-stretch"]
        samples = run_process(proc, model, heat, points, times)
        got = [(s.t, s.x_ref.x) for s in samples]
        # times ascending outer, points in configured order inner
        assert got == [(0.0, 0.0), (0.0, 0.1), (0.5, 0.0), (0.5, 0.1), (1.0, 0.0), (1.0, 0.1)]

    def test_rigid_rotation_is_rigid(self, model, heat):
        proc = default_processes(model.theta0)["rigid-rotation"]
        for t in (0.0, 0.4, 1.0):
            F = proc.deformation(t)
            assert_mat_close(F @ F.T, Mat3.identity(), 1e-12)
            L = velocity_gradient(F, proc.a_mat.rate(t))
            assert (L + L.T).norm_inf() <= 1e-12

    def test_fully_coupled_exercises_everything(self, model, heat):
        proc = default_processes(model.theta0)["fully-coupled"]
        st = proc.state_at(Vec3(0.3, 0.1, -0.2), 0.7)
        rates = proc.rates_at(Vec3(0.3, 0.1, -0.2), 0.7)
        assert st.em.norm_inf() > 0.0
        assert st.g.norm_inf() > 0.0
        assert abs(rates.theta_dot) > 0.0
        L = velocity_gradient(st.F, rates.f_dot)
        assert L.skew().norm_inf() > 1e-3  # genuine spin present


class TestBackSolvedSources:
    def test_rest_has_zero_sources(self, model, heat):
        proc = default_processes(model.theta0)["rest"]
        s = process_sample(proc, model, heat, Vec3(0.4, -0.2, 0.1), 0.5)
        assert s.b.norm_inf() <= 1e-12
        assert abs(s.r) <= 1e-12

    def test_rigid_rotation_body_force_is_centripetal(self, model, heat):
        # uniform stress and temperature: div tau = 0, so b = acceleration
        proc = default_processes(model.theta0)["rigid-rotation"]
        X, t = Vec3(0.5, 0.0, 0.0), 0.8
        s = process_sample(proc, model, heat, X, t)
        assert_vec_close(s.b, proc.acceleration(X, t), 1e-7)

    def test_momentum_closure(self, model, heat):
        # rho (accel) = div tau + rho b by construction of b
        proc = default_processes(model.theta0)["fully-coupled"]
        X, t = Vec3(0.3, -0.1, 0.4), 0.6
        s = process_sample(proc, model, heat, X, t)
        dens = Densities.from_deformation(model.rho_ref, s.state.F)
        lhs = proc.acceleration(X, t) * dens.rho
        rhs = stress_divergence(proc, model, X, t) + s.b * dens.rho
        assert (lhs - rhs).norm_inf() <= 1e-9 * max(1.0, lhs.norm_inf())

    def test_energy_closure(self, model, heat):
        # rho epsdot = tr(tau grad v) - div q + rho em . pidot + rho r
        from duhem.materials import response_rates

        proc = default_processes(model.theta0)["fully-coupled"]
        X, t = Vec3(0.3, -0.1, 0.4), 0.6
        s = process_sample(proc, model, heat, X, t)
        dens = Densities.from_deformation(model.rho_ref, s.state.F)
        rr = response_rates(model, s.state, s.rates)
        grad_v = velocity_gradient(s.state.F, s.rates.f_dot)
        working = ddot(s.response.tau.T, grad_v)
        lhs = dens.rho * rr.eps_dot
        rhs = (
            working
            - flux_divergence(proc, heat, X, t)
            + dens.rho * s.state.em.dot(rr.pi_dot)
            + dens.rho * s.r
        )
        assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs))

    def test_divergence_helpers_on_uniform_fields(self, model, heat):
        # spatially uniform state: both divergences vanish
        proc = default_processes(model.theta0)["rest"]
        assert stress_divergence(proc, model, Vec3(0.2, 0.1, 0.0), 0.3).norm_inf() <= 1e-10
        assert abs(flux_divergence(proc, heat, Vec3(0.2, 0.1, 0.0), 0.3)) <= 1e-10
