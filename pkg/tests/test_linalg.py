"""Fixed-size 3-vector / 3x3-matrix algebra, with numpy as the oracle for
determinants and inverses."""

import math
import random

import numpy as np
import pytest

from duhem.errors import SingularMatrix
from duhem.linalg import Mat3, Vec3, ddot, det, inverse, outer

from conftest import assert_mat_close, assert_vec_close


def _np(m: Mat3) -> np.ndarray:
    return np.array(m.rows(), dtype=float)


class TestVec3:
    def test_components_and_tuple(self):
        v = Vec3(1.0, -2.0, 3.5)
        assert (v.x, v.y, v.z) == (1.0, -2.0, 3.5)
        assert v.as_tuple() == (1.0, -2.0, 3.5)
        assert list(v) == [1.0, -2.0, 3.5]
        assert v[0] == 1.0 and v[1] == -2.0 and v[2] == 3.5

    def test_immutable(self):
        v = Vec3(1.0, 2.0, 3.0)
        with pytest.raises(AttributeError):
            v.x = 4.0

    def test_arithmetic(self):
        a, b = Vec3(1.0, 2.0, 3.0), Vec3(-1.0, 0.5, 2.0)
        assert_vec_close(a + b, Vec3(0.0, 2.5, 5.0), 0.0)
        assert_vec_close(a - b, Vec3(2.0, 1.5, 1.0), 0.0)
        assert_vec_close(-a, Vec3(-1.0, -2.0, -3.0), 0.0)
        assert_vec_close(a * 2.0, Vec3(2.0, 4.0, 6.0), 0.0)
        assert_vec_close(2.0 * a, Vec3(2.0, 4.0, 6.0), 0.0)
        assert_vec_close(a / 2.0, Vec3(0.5, 1.0, 1.5), 0.0)

    def test_dot_and_norm(self):
        a, b = Vec3(1.0, 2.0, 3.0), Vec3(4.0, -5.0, 6.0)
        assert a.dot(b) == 4.0 - 10.0 + 18.0
        assert Vec3(-7.0, 2.0, 3.0).norm_inf() == 7.0
        assert Vec3.zero().norm_inf() == 0.0

    def test_equality_and_hash(self):
        assert Vec3(1.0, 2.0, 3.0) == Vec3(1.0, 2.0, 3.0)
        assert Vec3(1.0, 2.0, 3.0) != Vec3(1.0, 2.0, 3.1)
        assert hash(Vec3(1.0, 2.0, 3.0)) == hash(Vec3(1.0, 2.0, 3.0))


class TestMat3:
    def test_constructors(self):
        m = Mat3.from_rows(((1.0, 2.0, 3.0), (4.0, 5.0, 6.0), (7.0, 8.0, 9.0)))
        assert m.rows() == ((1.0, 2.0, 3.0), (4.0, 5.0, 6.0), (7.0, 8.0, 9.0))
        assert Mat3.identity().rows() == ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))
        assert Mat3.diag(1.0, 2.0, 3.0)[1, 1] == 2.0
        assert Mat3.zero().norm_inf() == 0.0

    def test_indexing(self):
        m = Mat3(1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0)
        assert m[0, 0] == 1.0
        assert m[1, 2] == 6.0
        assert m[2, 1] == 8.0

    def test_matmul_matrix(self):
        rng = random.Random(11)
        for _ in range(20):
            a = Mat3(*(rng.uniform(-2, 2) for _ in range(9)))
            b = Mat3(*(rng.uniform(-2, 2) for _ in range(9)))
            assert np.allclose(_np(a @ b), _np(a) @ _np(b), rtol=0, atol=1e-14)

    def test_matmul_vector(self):
        rng = random.Random(12)
        for _ in range(20):
            a = Mat3(*(rng.uniform(-2, 2) for _ in range(9)))
            v = Vec3(*(rng.uniform(-2, 2) for _ in range(3)))
            got = a @ v
            want = _np(a) @ np.array(v.as_tuple())
            assert np.allclose([got.x, got.y, got.z], want, rtol=0, atol=1e-14)

    def test_transpose_trace(self):
        m = Mat3(1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0)
        assert m.T[0, 1] == 4.0 and m.T[2, 0] == 3.0
        assert m.trace() == 15.0

    def test_sym_skew_decomposition(self):
        m = Mat3(1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0)
        s, w = m.sym(), m.skew()
        assert_mat_close(s + w, m, 0.0)
        assert s.is_symmetric()
        assert_mat_close(w.T, -w, 0.0)
        assert not m.is_symmetric()
        assert m.is_symmetric(tol=10.0)

    def test_scalar_ops(self):
        m = Mat3.diag(1.0, 2.0, 3.0)
        assert_mat_close(m * 2.0, Mat3.diag(2.0, 4.0, 6.0), 0.0)
        assert_mat_close(2.0 * m, Mat3.diag(2.0, 4.0, 6.0), 0.0)
        assert_mat_close(m / 2.0, Mat3.diag(0.5, 1.0, 1.5), 0.0)
        assert_mat_close(-m, Mat3.diag(-1.0, -2.0, -3.0), 0.0)


class TestDetInverse:
    def test_det_known(self):
        assert det(Mat3.identity()) == 1.0
        assert det(Mat3.diag(2.0, 3.0, 4.0)) == 24.0
        assert det(Mat3(1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0)) == pytest.approx(0.0, abs=1e-12)

    def test_det_against_numpy(self):
        rng = random.Random(13)
        for _ in range(50):
            m = Mat3(*(rng.uniform(-3, 3) for _ in range(9)))
            assert det(m) == pytest.approx(float(np.linalg.det(_np(m))), rel=1e-10, abs=1e-12)

    def test_inverse_round_trip(self):
        rng = random.Random(14)
        for _ in range(50):
            m = Mat3(*(rng.uniform(-3, 3) for _ in range(9)))
            if abs(det(m)) < 1e-3:
                continue
            assert_mat_close(m @ inverse(m), Mat3.identity(), 1e-10)
            assert_mat_close(inverse(m) @ m, Mat3.identity(), 1e-10)

    def test_singular_raises(self):
        singular = Mat3(1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 0.0, 1.0, 1.0)
        with pytest.raises(SingularMatrix):
            inverse(singular)
        with pytest.raises(SingularMatrix):
            inverse(Mat3.zero())


class TestDdotOuter:
    def test_ddot_is_componentwise(self):
        a = Mat3(1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0)
        b = Mat3(9.0, 8.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0)
        want = sum(a[i, j] * b[i, j] for i in range(3) for j in range(3))
        assert ddot(a, b) == want

    def test_ddot_trace_identity(self):
        # ddot(a, b) = tr(a^T b)
        rng = random.Random(15)
        for _ in range(20):
            a = Mat3(*(rng.uniform(-2, 2) for _ in range(9)))
            b = Mat3(*(rng.uniform(-2, 2) for _ in range(9)))
            assert ddot(a, b) == pytest.approx((a.T @ b).trace(), rel=1e-13, abs=1e-13)

    def test_spin_pairing_gap(self):
        # ddot(a, b) - tr(a b) = 2 ddot(skew a, skew b)
        rng = random.Random(16)
        for _ in range(20):
            a = Mat3(*(rng.uniform(-2, 2) for _ in range(9)))
            b = Mat3(*(rng.uniform(-2, 2) for _ in range(9)))
            gap = ddot(a, b) - (a @ b).trace()
            assert gap == pytest.approx(2.0 * ddot(a.skew(), b.skew()), rel=1e-12, abs=1e-12)

    def test_outer(self):
        a, b = Vec3(1.0, 2.0, 3.0), Vec3(4.0, 5.0, 6.0)
        m = outer(a, b)
        for i in range(3):
            for j in range(3):
                assert m[i, j] == a[i] * b[j]
