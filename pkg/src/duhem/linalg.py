"""Exact-size 3-vector and 3x3 matrix algebra.

Containers are generic over the scalar type: any value supporting the
arithmetic operators (float, int, or a dual number) can be stored, so
derivative information propagates through every operation unchanged.
Matrices are row-major; ``m.xy`` is row x, column y.
"""

from __future__ import annotations

from .errors import SingularMatrix

__all__ = [
    "Vec3",
    "Mat3",
    "det",
    "inverse",
    "ddot",
    "outer",
    "SingularMatrix",
]


def _value(s):
    # Plain magnitude of a possibly dual scalar, for guards and norms.
    return abs(getattr(s, "value", s))


class Vec3:
    """Immutable 3-vector."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x, y, z):
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)

    def __setattr__(self, name, value):
        raise AttributeError("Vec3 is immutable")

    @staticmethod
    def zero() -> "Vec3":
        return Vec3(0.0, 0.0, 0.0)

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __mul__(self, s) -> "Vec3":
        return Vec3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Vec3":
        return Vec3(self.x / s, self.y / s, self.z / s)

    def dot(self, other: "Vec3"):
        return self.x * other.x + self.y * other.y + self.z * other.z

    def norm_inf(self) -> float:
        return max(_value(self.x), _value(self.y), _value(self.z))

    def as_tuple(self) -> tuple:
        return (self.x, self.y, self.z)

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def __getitem__(self, i: int):
        return (self.x, self.y, self.z)[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Vec3)
            and self.x == other.x
            and self.y == other.y
            and self.z == other.z
        )

    def __hash__(self):
        return hash((self.x, self.y, self.z))

    def __repr__(self) -> str:
        return f"Vec3({self.x!r}, {self.y!r}, {self.z!r})"


class Mat3:
    """Immutable 3x3 matrix, row-major component storage."""

    __slots__ = ("xx", "xy", "xz", "yx", "yy", "yz", "zx", "zy", "zz")

    def __init__(self, xx, xy, xz, yx, yy, yz, zx, zy, zz):
        for name, val in zip(Mat3.__slots__, (xx, xy, xz, yx, yy, yz, zx, zy, zz)):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("Mat3 is immutable")

    @staticmethod
    def from_rows(rows) -> "Mat3":
        (a, b, c), (d, e, f), (g, h, i) = rows
        return Mat3(a, b, c, d, e, f, g, h, i)

    @staticmethod
    def identity() -> "Mat3":
        return Mat3(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0)

    @staticmethod
    def zero() -> "Mat3":
        return Mat3(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)

    @staticmethod
    def diag(a, b, c) -> "Mat3":
        return Mat3(a, 0.0, 0.0, 0.0, b, 0.0, 0.0, 0.0, c)

    def rows(self) -> tuple:
        return (
            (self.xx, self.xy, self.xz),
            (self.yx, self.yy, self.yz),
            (self.zx, self.zy, self.zz),
        )

    def __add__(self, o: "Mat3") -> "Mat3":
        return Mat3(
            self.xx + o.xx, self.xy + o.xy, self.xz + o.xz,
            self.yx + o.yx, self.yy + o.yy, self.yz + o.yz,
            self.zx + o.zx, self.zy + o.zy, self.zz + o.zz,
        )

    def __sub__(self, o: "Mat3") -> "Mat3":
        return Mat3(
            self.xx - o.xx, self.xy - o.xy, self.xz - o.xz,
            self.yx - o.yx, self.yy - o.yy, self.yz - o.yz,
            self.zx - o.zx, self.zy - o.zy, self.zz - o.zz,
        )

    def __neg__(self) -> "Mat3":
        return Mat3(
            -self.xx, -self.xy, -self.xz,
            -self.yx, -self.yy, -self.yz,
            -self.zx, -self.zy, -self.zz,
        )

    def __mul__(self, s) -> "Mat3":
        return Mat3(
            self.xx * s, self.xy * s, self.xz * s,
            self.yx * s, self.yy * s, self.yz * s,
            self.zx * s, self.zy * s, self.zz * s,
        )

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Mat3":
        return Mat3(
            self.xx / s, self.xy / s, self.xz / s,
            self.yx / s, self.yy / s, self.yz / s,
            self.zx / s, self.zy / s, self.zz / s,
        )

    def __matmul__(self, other):
        if isinstance(other, Vec3):
            return Vec3(
                self.xx * other.x + self.xy * other.y + self.xz * other.z,
                self.yx * other.x + self.yy * other.y + self.yz * other.z,
                self.zx * other.x + self.zy * other.y + self.zz * other.z,
            )
        o = other
        return Mat3(
            self.xx * o.xx + self.xy * o.yx + self.xz * o.zx,
            self.xx * o.xy + self.xy * o.yy + self.xz * o.zy,
            self.xx * o.xz + self.xy * o.yz + self.xz * o.zz,
            self.yx * o.xx + self.yy * o.yx + self.yz * o.zx,
            self.yx * o.xy + self.yy * o.yy + self.yz * o.zy,
            self.yx * o.xz + self.yy * o.yz + self.yz * o.zz,
            self.zx * o.xx + self.zy * o.yx + self.zz * o.zx,
            self.zx * o.xy + self.zy * o.yy + self.zz * o.zy,
            self.zx * o.xz + self.zy * o.yz + self.zz * o.zz,
        )

    @property
    def T(self) -> "Mat3":
        return Mat3(
            self.xx, self.yx, self.zx,
            self.xy, self.yy, self.zy,
            self.xz, self.yz, self.zz,
        )

    def trace(self):
        return self.xx + self.yy + self.zz

    def sym(self) -> "Mat3":
        return Mat3(
            self.xx, (self.xy + self.yx) * 0.5, (self.xz + self.zx) * 0.5,
            (self.xy + self.yx) * 0.5, self.yy, (self.yz + self.zy) * 0.5,
            (self.xz + self.zx) * 0.5, (self.yz + self.zy) * 0.5, self.zz,
        )

    def skew(self) -> "Mat3":
        return Mat3(
            0.0, (self.xy - self.yx) * 0.5, (self.xz - self.zx) * 0.5,
            (self.yx - self.xy) * 0.5, 0.0, (self.yz - self.zy) * 0.5,
            (self.zx - self.xz) * 0.5, (self.zy - self.yz) * 0.5, 0.0,
        )

    def norm_inf(self) -> float:
        return max(_value(getattr(self, n)) for n in Mat3.__slots__)

    def is_symmetric(self, tol: float = 0.0) -> bool:
        return (
            _value(self.xy - self.yx) <= tol
            and _value(self.xz - self.zx) <= tol
            and _value(self.yz - self.zy) <= tol
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.rows()[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat3) and all(
            getattr(self, n) == getattr(other, n) for n in Mat3.__slots__
        )

    def __hash__(self):
        return hash(tuple(getattr(self, n) for n in Mat3.__slots__))

    def __repr__(self) -> str:
        return f"Mat3.from_rows({self.rows()!r})"


def det(m: Mat3):
    """Determinant by cofactor expansion along the first row."""
    return (
        m.xx * (m.yy * m.zz - m.yz * m.zy)
        - m.xy * (m.yx * m.zz - m.yz * m.zx)
        + m.xz * (m.yx * m.zy - m.yy * m.zx)
    )


def inverse(m: Mat3, eps_rel: float = 1e-12) -> Mat3:
    """Inverse via the adjugate.

    Raises SingularMatrix when ``|det| <= eps_rel * norm_inf(m)**3``, so the
    guard scales with the matrix magnitude.
    """
    d = det(m)
    scale = m.norm_inf()
    if _value(d) <= eps_rel * scale * scale * scale:
        raise SingularMatrix(
            f"matrix is singular within threshold {eps_rel:g} * |m|^3 (det={_value(d):g})"
        )
    return Mat3(
        (m.yy * m.zz - m.yz * m.zy) / d,
        (m.xz * m.zy - m.xy * m.zz) / d,
        (m.xy * m.yz - m.xz * m.yy) / d,
        (m.yz * m.zx - m.yx * m.zz) / d,
        (m.xx * m.zz - m.xz * m.zx) / d,
        (m.xz * m.yx - m.xx * m.yz) / d,
        (m.yx * m.zy - m.yy * m.zx) / d,
        (m.xy * m.zx - m.xx * m.zy) / d,
        (m.xx * m.yy - m.xy * m.yx) / d,
    )


def ddot(a: Mat3, b: Mat3):
    """Full contraction sum_ij a_ij b_ij (no transpose)."""
    return (
        a.xx * b.xx + a.xy * b.xy + a.xz * b.xz
        + a.yx * b.yx + a.yy * b.yy + a.yz * b.yz
        + a.zx * b.zx + a.zy * b.zy + a.zz * b.zz
    )


def outer(a: Vec3, b: Vec3) -> Mat3:
    """Tensor product (outer(a, b))_ij = a_i b_j."""
    return Mat3(
        a.x * b.x, a.x * b.y, a.x * b.z,
        a.y * b.x, a.y * b.y, a.y * b.z,
        a.z * b.x, a.z * b.y, a.z * b.z,
    )
