"""Seeded random sampling of states, rates, and rotations.

All sampling uses ``random.Random`` seeded from a string derived from the
run seed and a stream label, which is deterministic across platforms and
interpreter runs (string seeding hashes the bytes, independent of
PYTHONHASHSEED). Reruns with the same seed therefore reproduce every
sampled state bit for bit.
"""

from __future__ import annotations

import random

from .kinematics import MaterialState, ReferentialState, StateRates
from .linalg import Mat3, Vec3, det

__all__ = [
    "derive_rng",
    "rand_deformation",
    "rand_state",
    "rand_rates",
    "rand_referential_state",
    "rand_referential_rates",
    "rand_rotation",
    "rand_vector",
]


def derive_rng(seed: int, label: str) -> random.Random:
    """Independent deterministic stream for one sampling purpose."""
    return random.Random(f"{seed}:{label}")


def rand_vector(rng: random.Random, lo: float = -1.0, hi: float = 1.0) -> Vec3:
    return Vec3(rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi))


def rand_deformation(rng: random.Random, spread: float = 0.3, det_min: float = 0.5) -> Mat3:
    """Deformation gradient F = I + U with U uniform in [-spread, spread],
    rejection-sampled to det F > det_min."""
    while True:
        f = Mat3(
            1.0 + rng.uniform(-spread, spread), rng.uniform(-spread, spread), rng.uniform(-spread, spread),
            rng.uniform(-spread, spread), 1.0 + rng.uniform(-spread, spread), rng.uniform(-spread, spread),
            rng.uniform(-spread, spread), rng.uniform(-spread, spread), 1.0 + rng.uniform(-spread, spread),
        )
        if det(f) > det_min:
            return f


def rand_state(rng: random.Random, theta0: float) -> MaterialState:
    """Random admissible spatial state: theta in [0.5, 1.5] theta0, field
    and temperature-gradient components in [-1, 1]."""
    return MaterialState(
        F=rand_deformation(rng),
        theta=rng.uniform(0.5 * theta0, 1.5 * theta0),
        em=rand_vector(rng),
        g=rand_vector(rng),
    )


def rand_rates(rng: random.Random) -> StateRates:
    """Random state rates with all components in [-1, 1]."""
    return StateRates(
        f_dot=Mat3(*(rng.uniform(-1.0, 1.0) for _ in range(9))),
        theta_dot=rng.uniform(-1.0, 1.0),
        em_dot=rand_vector(rng),
        g_dot=rand_vector(rng),
    )


def rand_referential_state(rng: random.Random, theta0: float) -> ReferentialState:
    """Random referential state with independent W and G vectors."""
    return ReferentialState(
        F=rand_deformation(rng),
        theta=rng.uniform(0.5 * theta0, 1.5 * theta0),
        w=rand_vector(rng),
        g_ref=rand_vector(rng),
    )


def rand_referential_rates(rng: random.Random):
    """Random rates (f_dot, theta_dot, w_dot, g_ref_dot) for the
    referential description, packed as a StateRates with em_dot = w_dot and
    g_dot = g_ref_dot."""
    return StateRates(
        f_dot=Mat3(*(rng.uniform(-1.0, 1.0) for _ in range(9))),
        theta_dot=rng.uniform(-1.0, 1.0),
        em_dot=rand_vector(rng),
        g_dot=rand_vector(rng),
    )


def rand_rotation(rng: random.Random) -> Mat3:
    """Uniform proper rotation from a normalized random quaternion."""
    while True:
        q = (rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0))
        n = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]) ** 0.5
        if n > 1e-8:
            break
    w, x, y, z = (c / n for c in q)
    return Mat3(
        1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
        2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x),
        2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y),
    )
