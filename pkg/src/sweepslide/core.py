"""Scalar 3D primitives shared by every other module.

Vectors are plain ``(x, y, z)`` tuples of floats, so all values here are
immutable and every function is pure; the module is safe to use from any
number of concurrent callers.  All arithmetic is done in Python floats
(IEEE binary64) throughout the package -- precision is deliberately not
mixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "Vec3",
    "DegenerateVectorError",
    "DegenerateTriangleError",
    "Plane",
    "Triangle",
    "add",
    "sub",
    "scale",
    "dot",
    "cross",
    "norm",
    "norm_sq",
    "distance",
    "normalize",
    "signed_plane_distance",
    "robust_quadratic_roots",
]

Vec3 = tuple[float, float, float]

# Below this length a vector has no usable direction.
DEGENERATE_LENGTH = 1e-12
# How far a stored "unit" vector may drift from length 1.
UNIT_TOLERANCE = 1e-9


class DegenerateVectorError(ValueError):
    """A direction was requested from a (near-)zero vector."""


class DegenerateTriangleError(ValueError):
    """Triangle vertices are collinear; it has no usable normal."""


def add(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def scale(v: Vec3, s: float) -> Vec3:
    return (v[0] * s, v[1] * s, v[2] * s)


def dot(a: Vec3, b: Vec3) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def norm_sq(v: Vec3) -> float:
    return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]


def norm(v: Vec3) -> float:
    return math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def distance(a: Vec3, b: Vec3) -> float:
    return norm(sub(a, b))


def normalize(v: Vec3) -> Vec3:
    """Unit vector along *v*.

    Raises :class:`DegenerateVectorError` when ``|v| <= 1e-12``: callers
    must handle zero velocity explicitly instead of receiving garbage.
    """
    n = norm(v)
    if n <= DEGENERATE_LENGTH:
        raise DegenerateVectorError(f"cannot normalize near-zero vector {v!r}")
    return (v[0] / n, v[1] / n, v[2] / n)


@dataclass(frozen=True)
class Plane:
    """A plane given by any point on it and its unit normal."""

    origin: Vec3
    normal: Vec3

    def __post_init__(self) -> None:
        if abs(norm(self.normal) - 1.0) > UNIT_TOLERANCE:
            raise ValueError(f"plane normal is not unit length: {self.normal!r}")


def signed_plane_distance(plane: Plane, point: Vec3) -> float:
    """Distance from *point* to *plane*; positive on the normal side."""
    return dot(plane.normal, sub(point, plane.origin))


@dataclass(frozen=True)
class Triangle:
    """A collision triangle with its unit normal cached at construction.

    Caching the normal once avoids per-query recomputation and the
    round-off drift that would come with it.  Construction rejects
    collinear vertices.
    """

    a: Vec3
    b: Vec3
    c: Vec3
    normal: Vec3 = field(init=False)

    def __post_init__(self) -> None:
        n = cross(sub(self.b, self.a), sub(self.c, self.a))
        m = norm(n)
        if m <= DEGENERATE_LENGTH:
            raise DegenerateTriangleError(
                f"collinear triangle vertices: {self.a!r}, {self.b!r}, {self.c!r}"
            )
        object.__setattr__(self, "normal", (n[0] / m, n[1] / m, n[2] / m))

    @property
    def plane(self) -> Plane:
        return Plane(self.a, self.normal)

    def vertices(self) -> tuple[Vec3, Vec3, Vec3]:
        return (self.a, self.b, self.c)


def robust_quadratic_roots(a: float, b: float, c: float) -> tuple[float, float] | None:
    """Both real roots of ``a*t^2 + b*t + c = 0``, ascending, or ``None``.

    Uses ``q = -(b + sign(b) * sqrt(b^2 - 4ac)) / 2`` with roots ``q/a``
    and ``c/q`` so the smaller root is never formed by subtracting two
    nearly equal quantities.  ``c == 0`` is handled separately because
    there ``q`` may be zero; the roots are then exactly ``0`` and ``-b/a``.

    The caller must guarantee ``a != 0`` (treat near-linear equations as
    linear before calling).
    """
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return None
    if c == 0.0:
        r = -b / a
        return (r, 0.0) if r < 0.0 else (0.0, r)
    q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
    if q == 0.0:
        # Reachable only when b and the discriminant both underflow to
        # zero with |c| subnormal; 0 is then a double root to within one
        # ulp of c.
        return (0.0, 0.0)
    r0 = q / a
    r1 = c / q
    return (r0, r1) if r0 <= r1 else (r1, r0)
