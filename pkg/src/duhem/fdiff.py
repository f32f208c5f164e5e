"""Central finite differences: the independent oracle for derivatives.

These routines deliberately share no code with the dual-number engine so
that agreement between the two is meaningful evidence.
"""

from __future__ import annotations

from typing import Callable, Sequence

from .linalg import Vec3

__all__ = [
    "fd_gradient",
    "fd_derivative",
    "spatial_divergence_fd",
    "spatial_matrix_divergence_fd",
]


def fd_step(x: float) -> float:
    """Default central-difference step for abscissa ``x``."""
    return max(1e-6, 1e-6 * abs(x))


def fd_derivative(f: Callable[[float], float], x: float, h: float | None = None) -> float:
    """Central-difference derivative of a scalar function at ``x``."""
    step = fd_step(x) if h is None else h
    return (f(x + step) - f(x - step)) / (2.0 * step)


def fd_gradient(
    f: Callable[[Sequence[float]], float],
    x: Sequence[float],
    h: float | None = None,
) -> list[float]:
    """Central-difference gradient of ``f`` at ``x``.

    The step is per-component ``max(1e-6, 1e-6 * |x_i|)`` unless ``h`` is
    given, in which case it is used uniformly.
    """
    base = list(x)
    grad = []
    for i, xi in enumerate(base):
        step = fd_step(xi) if h is None else h
        hi = list(base)
        lo = list(base)
        hi[i] = xi + step
        lo[i] = xi - step
        grad.append((f(hi) - f(lo)) / (2.0 * step))
    return grad


def spatial_divergence_fd(
    field: Callable[[Vec3], Vec3],
    x: Vec3,
    h: float | None = None,
):
    """Central-difference divergence of a vector field at point ``x``.

    Default step is 1e-5 times the characteristic length max(1, |x|_inf).
    """
    step = h if h is not None else 1e-5 * max(1.0, x.norm_inf())
    div = 0.0
    for i in range(3):
        delta = [0.0, 0.0, 0.0]
        delta[i] = step
        d = Vec3(*delta)
        div = div + (field(x + d)[i] - field(x - d)[i]) / (2.0 * step)
    return div


def spatial_matrix_divergence_fd(field, x: Vec3, h: float | None = None) -> Vec3:
    """Central-difference divergence of a matrix field at point ``x``.

    The divergence is taken over the second (column) index:
    out_i = sum_j d(field_ij)/dx_j.
    """
    step = h if h is not None else 1e-5 * max(1.0, x.norm_inf())
    acc = [0.0, 0.0, 0.0]
    for j in range(3):
        delta = [0.0, 0.0, 0.0]
        delta[j] = step
        d = Vec3(*delta)
        hi = field(x + d)
        lo = field(x - d)
        for i in range(3):
            acc[i] += (hi[i, j] - lo[i, j]) / (2.0 * step)
    return Vec3(*acc)
