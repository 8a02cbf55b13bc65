"""Iterative collide-and-slide response with a hard three-iteration bound.

Per frame the sphere advances to just short of the first contact, then
loses one degree of freedom per contact: iteration one constrains motion
to a sliding plane, iteration two to the crease line of two planes, and a
third contact stops it outright -- three contacts use up all three degrees
of freedom, so no velocity-magnitude escape hatch is needed.

The loop carries position, velocity, and destination as three separate
values.  The destination is never recomputed as ``pos + vel`` once it has
been projected: if ``a + b`` rounded to ``c``, there is no guarantee
``c - b`` gives back ``a``, and exactly that kind of re-derivation is what
lets a sphere creep into the mesh.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Plane,
    Vec3,
    add,
    cross,
    dot,
    norm,
    normalize,
    scale,
    signed_plane_distance,
    sub,
)
from .detect import check_collision

__all__ = [
    "ResponseConfig",
    "SweepState",
    "FrameResult",
    "near_and_touch_points",
    "sliding_plane",
    "project_dest_one_plane",
    "crease_response",
    "sphere_sweep",
    "PARALLEL_PLANE_EPS",
]

# Two sliding planes whose normals' cross product is shorter than this are
# treated as the same directional constraint.
PARALLEL_PLANE_EPS = 1e-6


@dataclass(frozen=True)
class ResponseConfig:
    """Tuning knobs for the response step, in unit-sphere space.

    ``very_close_dist`` is the stand-off tolerance: the sphere stops that
    far short of contacts and destinations are pushed that far off sliding
    planes.  ``min_velocity`` is purely a divide-by-zero guard in front of
    the normalization of the remaining velocity, not a behavioral
    early-out; it fires only below any physically meaningful motion.
    """

    very_close_dist: float = 0.005
    min_velocity: float = 1e-9

    def __post_init__(self) -> None:
        if not (0.0 < self.very_close_dist < 0.1):
            raise ValueError(f"very_close_dist out of range: {self.very_close_dist!r}")
        if self.min_velocity < 0.0:
            raise ValueError(f"min_velocity must be >= 0: {self.min_velocity!r}")


@dataclass
class SweepState:
    """The three carried movement parameters of one frame.

    ``dest`` is authoritative once projected; ``vel`` and ``dest`` are both
    kept up to date rather than re-derived from one another mid-frame.
    """

    pos: Vec3
    vel: Vec3
    dest: Vec3


@dataclass(frozen=True)
class FrameResult:
    """Outcome of one response frame.

    ``iterations`` counts detection calls that found a hit.  ``planes``
    holds the active sliding-plane constraints at exit (at most two) and
    ``final_vel`` the remaining velocity, kept for instrumentation.
    """

    final_pos: Vec3
    iterations: int
    planes: tuple[Plane, ...] = ()
    contact_indices: tuple[int, ...] = ()
    final_vel: Vec3 = (0.0, 0.0, 0.0)


def near_and_touch_points(source: Vec3, vel: Vec3, t: float,
                          cfg: ResponseConfig) -> tuple[Vec3, Vec3]:
    """Touch point (center at first contact) and near point (where it stops).

    The near point sits ``very_close_dist`` short of the touch point along
    the velocity, clamped so it is never behind the source: a contact
    closer than the tolerance yields zero advancement, not a backward step.
    """
    touch = add(source, scale(vel, t))
    travelled = norm(vel) * t
    short = max(travelled - cfg.very_close_dist, 0.0)
    if short == 0.0:
        return touch, source
    near = add(source, scale(normalize(vel), short))
    return touch, near


def sliding_plane(touch: Vec3, contact: Vec3) -> Plane:
    """Plane tangent to the sphere at *contact* when centered at *touch*.

    The normal points from the contact point to the touch point; since the
    two are one unit apart at contact, the sphere sits on the positive
    side at distance one.
    """
    return Plane(origin=contact, normal=normalize(sub(touch, contact)))


def project_dest_one_plane(dest: Vec3, plane: Plane, cfg: ResponseConfig) -> Vec3:
    """Move *dest* along the plane normal to a stand-off of ``1 + tolerance``.

    The long radius keeps the projected destination from actually touching
    the sliding plane; the result's signed plane distance is exactly the
    long radius.
    """
    long_radius = 1.0 + cfg.very_close_dist
    return sub(dest, scale(plane.normal, signed_plane_distance(plane, dest) - long_radius))


def crease_response(dest: Vec3, near: Vec3, p1: Plane, p2: Plane) -> tuple[Vec3, Vec3]:
    """Confine the remaining motion to the crease line of two planes.

    The crease direction is the normalized cross product of the plane
    normals; the remaining displacement ``dest - near`` is projected onto
    it.  Returns ``(new_vel, new_dest)``.  Callers must reject
    near-parallel planes first.
    """
    crease = normalize(cross(p1.normal, p2.normal))
    along = dot(sub(dest, near), crease)
    new_vel = scale(crease, along)
    return new_vel, add(near, new_vel)


def sphere_sweep(world, pos: Vec3, vel: Vec3,
                 cfg: ResponseConfig = ResponseConfig()) -> FrameResult:
    """Move a unit sphere through *world* by *vel*, sliding on contact.

    *world* is a :class:`~sweepslide.world.World` or an
    :class:`~sweepslide.ellipsoid.EllipsoidWorldView`; ``pos`` must start
    non-penetrating.  Pure function of its arguments, safe to run
    concurrently against a shared world.
    """
    state = SweepState(pos=pos, vel=vel, dest=add(pos, vel))
    first_plane: Plane | None = None
    planes: tuple[Plane, ...] = ()
    contacts: list[int] = []
    iterations = 0

    for i in range(3):
        if norm(state.vel) <= cfg.min_velocity:
            break  # nothing meaningful left to move; pos is already safe
        hit = check_collision(world, state.pos, state.vel)
        if hit is None:
            state.pos = state.dest  # the carried target, not pos + vel
            break
        iterations += 1
        contacts.append(hit.triangle_index)
        touch, near = near_and_touch_points(state.pos, state.vel, hit.t, cfg)
        state.pos = near

        if i == 0:
            first_plane = sliding_plane(touch, hit.contact_point)
            planes = (first_plane,)
            state.dest = project_dest_one_plane(state.dest, first_plane, cfg)
            state.vel = sub(state.dest, state.pos)
        elif i == 1:
            second_plane = sliding_plane(touch, hit.contact_point)
            if norm(cross(first_plane.normal, second_plane.normal)) <= PARALLEL_PLANE_EPS:
                # Same directional constraint (includes re-hitting the first
                # plane): the newest contact becomes authoritative and the
                # one-plane projection is redone, avoiding a zero crease.
                first_plane = second_plane
                planes = (second_plane,)
                state.dest = project_dest_one_plane(state.dest, second_plane, cfg)
                state.vel = sub(state.dest, state.pos)
            else:
                planes = (first_plane, second_plane)
                state.vel, state.dest = crease_response(state.dest, near, first_plane,
                                                        second_plane)
        # i == 2: a third contact leaves no freedom; pos has been advanced
        # to its near point and the loop simply ends there.

    return FrameResult(
        final_pos=state.pos,
        iterations=iterations,
        planes=planes,
        contact_indices=tuple(contacts),
        final_vel=state.vel,
    )
