"""Forward-mode dual numbers: derivative rules against closed forms and
finite differences, and clean interop with the vector/matrix types."""

import math
import random

import pytest

import duhem.dual as dm
from duhem.dual import Dual
from duhem.fdiff import fd_derivative
from duhem.linalg import Mat3, Vec3


def d(x: float) -> Dual:
    """Seed a dual variable with unit derivative."""
    return Dual(x, 1.0)


class TestArithmetic:
    def test_add_sub(self):
        z = d(3.0) + 2.0
        assert z.value == 5.0 and z.deriv == 1.0
        z = 2.0 - d(3.0)
        assert z.value == -1.0 and z.deriv == -1.0
        z = d(3.0) - d(1.0)  # both seeded: derivative of (x - x) would be 0
        assert z.value == 2.0 and z.deriv == 0.0

    def test_product_rule(self):
        x = Dual(3.0, 2.0)
        y = Dual(4.0, 5.0)
        z = x * y
        assert z.value == 12.0
        assert z.deriv == 2.0 * 4.0 + 3.0 * 5.0

    def test_quotient_rule(self):
        x = Dual(3.0, 2.0)
        y = Dual(4.0, 5.0)
        z = x / y
        assert z.value == pytest.approx(0.75)
        assert z.deriv == pytest.approx((2.0 * 4.0 - 3.0 * 5.0) / 16.0)
        z = 1.0 / d(4.0)
        assert z.deriv == pytest.approx(-1.0 / 16.0)

    def test_power_and_negation(self):
        z = d(3.0) ** 4
        assert z.value == 81.0 and z.deriv == pytest.approx(4.0 * 27.0)
        z = -d(3.0)
        assert z.value == -3.0 and z.deriv == -1.0
        z = abs(Dual(-3.0, 2.0))
        assert z.value == 3.0 and z.deriv == -2.0

    def test_comparisons_use_value(self):
        assert d(2.0) < 3.0
        assert d(2.0) <= 2.0
        assert d(5.0) > d(1.0)
        assert Dual(2.0, 99.0) == Dual(2.0, -1.0)


class TestFunctions:
    @pytest.mark.parametrize(
        "fn, x",
        [
            (dm.sqrt, 2.3),
            (dm.exp, 0.7),
            (dm.log, 1.9),
            (dm.sin, 0.6),
            (dm.cos, 0.6),
            (dm.tan, 0.4),
        ],
    )
    def test_against_finite_difference(self, fn, x):
        got = fn(d(x)).deriv
        want = fd_derivative(lambda v: fn(v), x)
        assert got == pytest.approx(want, rel=1e-6, abs=1e-8)

    def test_float_passthrough(self):
        # module functions are generic: plain floats in, plain floats out
        assert dm.sqrt(4.0) == 2.0
        assert dm.exp(0.0) == 1.0
        assert isinstance(dm.sin(0.3), float)

    def test_chain(self):
        # f(x) = exp(sin(x^2)), f'(x) = exp(sin(x^2)) cos(x^2) 2x
        x = 0.8
        z = dm.exp(dm.sin(d(x) * d(x)))
        want = math.exp(math.sin(x * x)) * math.cos(x * x) * 2.0 * x
        assert z.deriv == pytest.approx(want, rel=1e-14)


class TestContainerInterop:
    def test_dual_scalar_times_vector(self):
        v = Vec3(1.0, 2.0, 3.0)
        s = Dual(2.0, 1.0)
        for prod in (s * v, v * s):
            assert isinstance(prod, Vec3)
            assert prod.x.value == 2.0 and prod.x.deriv == 1.0
            assert prod.z.value == 6.0 and prod.z.deriv == 3.0

    def test_dual_vectors_dot(self):
        # d/dt (t a) . (t b) = 2 t a.b
        a, b, t = Vec3(1.0, 2.0, 3.0), Vec3(4.0, 5.0, 6.0), 0.7
        got = (d(t) * a).dot(d(t) * b)
        assert got.deriv == pytest.approx(2.0 * t * a.dot(b), rel=1e-14)

    def test_dual_matrix_inverse(self):
        # F(t) = I + t N; d/dt F^{-1} = -F^{-1} Ndot F^{-1}
        from duhem.linalg import inverse

        n = Mat3(0.1, 0.2, 0.0, 0.0, -0.1, 0.3, 0.2, 0.0, 0.1)
        t = 0.4
        f_dual = Mat3.identity() + d(t) * n
        inv_dual = inverse(f_dual)
        f = Mat3.identity() + t * n
        want = -(inverse(f) @ n @ inverse(f))
        for i in range(3):
            for j in range(3):
                assert inv_dual[i, j].deriv == pytest.approx(want[i, j], rel=1e-12, abs=1e-12)

    def test_no_silent_coercion(self):
        # A dual must never swallow a vector into its value slot.
        z = Dual(2.0, 1.0) * Vec3(1.0, 1.0, 1.0)
        assert isinstance(z, Vec3)
        assert not isinstance(z, Dual)
