"""Scripted multi-frame scenarios, trajectory records, and report output.

A scenario drives one of the response algorithms frame by frame through a
mesh: positions and velocities are scaled into unit-sphere space, the
response runs there, and the resulting center is scaled back for
reporting.  Every frame also logs the exhaustively computed center-to-mesh
distance so the broadphase path is audited by something that never uses
it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from io import StringIO
from typing import Union

import numpy as np

from .core import Triangle, Vec3, distance
from .ellipsoid import EllipsoidRadii, EllipsoidWorldView, from_sphere_space, to_sphere_space
from .legacy import LegacyConfig, collide_with_world_legacy
from .mesh import builtin_mesh, load_obj_mesh
from .response import ResponseConfig, sphere_sweep
from .world import DEFAULT_CELL_SIZE, build_world

__all__ = [
    "Scenario",
    "TrajectoryRecord",
    "MeshSource",
    "load_scenario",
    "builtin_scenario",
    "run_scenario",
    "report",
    "summarize",
    "mesh_array",
    "min_distance_to_mesh",
    "REPORT_COLUMNS",
    "ALGORITHMS",
]

ALGORITHMS = ("improved", "legacy")
REPORT_COLUMNS = ("frame", "x", "y", "z", "iterations", "min_mesh_distance",
                  "displacement", "planes_hit")

VelocityProgram = Union[Vec3, list[Vec3]]


@dataclass(frozen=True)
class MeshSource:
    """Either a file path or a builtin generator id plus parameters."""

    path: str | None = None
    builtin: str | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if (self.path is None) == (self.builtin is None):
            raise ValueError("mesh source needs exactly one of 'path' or 'builtin'")

    def load(self) -> list[Triangle]:
        if self.path is not None:
            return load_obj_mesh(self.path).triangles
        return builtin_mesh(self.builtin, **self.params)


@dataclass(frozen=True)
class Scenario:
    name: str
    mesh: MeshSource
    start: Vec3
    velocity: VelocityProgram
    frames: int = 30
    radii: EllipsoidRadii = EllipsoidRadii(1.0, 1.0, 1.0)
    algorithm: str = "improved"  # improved | legacy | both
    epsilon: float = 0.005
    seed: int = 0
    legacy_max_recursion: int = 5

    def __post_init__(self) -> None:
        if self.frames < 1:
            raise ValueError(f"frames must be >= 1, got {self.frames!r}")
        if not (self.epsilon > 0.0):
            raise ValueError(f"epsilon must be positive, got {self.epsilon!r}")
        if self.algorithm not in (*ALGORITHMS, "both"):
            raise ValueError(f"algorithm must be improved, legacy, or both: {self.algorithm!r}")

    def velocity_for_frame(self, frame: int) -> Vec3:
        if isinstance(self.velocity, list):
            return self.velocity[frame] if frame < len(self.velocity) else (0.0, 0.0, 0.0)
        return self.velocity


@dataclass(frozen=True)
class TrajectoryRecord:
    """One frame of output.

    ``position`` and ``displacement`` are world space; ``min_mesh_distance``
    is the sphere-space center-to-mesh distance (where radius 1 is
    meaningful), recomputed over every triangle without the broadphase.
    """

    frame: int
    position: Vec3
    iterations: int
    min_mesh_distance: float
    displacement: float
    planes_hit: int


def _vec(value, what: str) -> Vec3:
    if not (isinstance(value, (list, tuple)) and len(value) == 3):
        raise ValueError(f"{what} must be a 3-element list, got {value!r}")
    return (float(value[0]), float(value[1]), float(value[2]))


def load_scenario(path: str) -> Scenario:
    """Read a scenario from a JSON file (schema documented in the README)."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return scenario_from_dict(raw)


def scenario_from_dict(raw: dict) -> Scenario:
    mesh_raw = raw.get("mesh")
    if not isinstance(mesh_raw, dict):
        raise ValueError("scenario 'mesh' must be an object with 'path' or 'builtin'")
    if "path" in mesh_raw:
        mesh = MeshSource(path=mesh_raw["path"])
    else:
        params = {k: v for k, v in mesh_raw.items() if k != "builtin"}
        mesh = MeshSource(builtin=mesh_raw.get("builtin"), params=params)

    velocity_raw = raw.get("velocity")
    velocity: VelocityProgram
    if isinstance(velocity_raw, list) and velocity_raw and isinstance(velocity_raw[0], (list, tuple)):
        velocity = [_vec(v, "velocity entry") for v in velocity_raw]
    else:
        velocity = _vec(velocity_raw, "velocity")

    radii_raw = raw.get("radii", [1.0, 1.0, 1.0])
    radii = EllipsoidRadii(*_vec(radii_raw, "radii"))

    return Scenario(
        name=str(raw.get("name", "scenario")),
        mesh=mesh,
        start=_vec(raw.get("start"), "start"),
        velocity=velocity,
        frames=int(raw.get("frames", 30)),
        radii=radii,
        algorithm=str(raw.get("algorithm", "improved")),
        epsilon=float(raw.get("epsilon", 0.005)),
        seed=int(raw.get("seed", 0)),
        legacy_max_recursion=int(raw.get("legacy_max_recursion", 5)),
    )


# Canned scenarios around the builtin meshes.  Starting points and
# velocities are chosen so each mesh exhibits the behavior it exists for:
# settling on the floor, lock-up vs jitter in the obtuse corner, the
# iteration blow-up in the acute pincer, clean sliding along the crease.
_BUILTIN_SCENARIOS = {
    "floor": dict(mesh=("floor", {}), start=(0.0, 0.0, 3.0), velocity=(0.0, 0.0, -3.0),
                  frames=5),
    "obtuse_corner": dict(mesh=("obtuse_corner", {}), start=(2.5, 0.0, 3.5),
                          velocity=(-1.2, 0.0, -1.6), frames=30),
    "acute_corner": dict(mesh=("acute_corner", {}),
                         start=(24.0 * math.cos(math.radians(2.5)), 0.0,
                                24.0 * math.sin(math.radians(2.5))),
                         velocity=(-3.0, 0.0, 0.0), frames=1,
                         legacy_max_recursion=1000),
    "crease": dict(mesh=("crease", {"angle": 120.0}), start=(2.0, 0.0, 2.0),
                   velocity=(-1.5, 1.0, -1.0), frames=12),
    "box_room": dict(mesh=("box_room", {}), start=(0.0, 0.0, 0.0),
                     velocity=(1.3, 0.7, -1.9), frames=30),
    "random_soup": dict(mesh=("random_soup", {}), start=(0.0, 0.0, 14.0),
                        velocity=(0.4, -0.3, -2.5), frames=20),
}


def builtin_scenario(kind: str, *, angle: float | None = None, frames: int | None = None,
                     algorithm: str = "improved", epsilon: float = 0.005,
                     seed: int = 0) -> Scenario:
    """A ready-to-run scenario around one of the builtin meshes."""
    try:
        preset = _BUILTIN_SCENARIOS[kind]
    except KeyError:
        raise ValueError(f"no builtin scenario {kind!r}; known: {sorted(_BUILTIN_SCENARIOS)}") from None
    mesh_kind, params = preset["mesh"]
    params = dict(params)
    if angle is not None:
        params["angle"] = angle
    if mesh_kind == "random_soup":
        params["seed"] = seed
    return Scenario(
        name=kind,
        mesh=MeshSource(builtin=mesh_kind, params=params),
        start=preset["start"],
        velocity=preset["velocity"],
        frames=frames if frames is not None else preset["frames"],
        algorithm=algorithm,
        epsilon=epsilon,
        seed=seed,
        legacy_max_recursion=preset.get("legacy_max_recursion", 5),
    )


def mesh_array(triangles: list[Triangle]) -> np.ndarray:
    """Vertices as an ``(n, 3, 3)`` float array for the distance oracle."""
    if not triangles:
        return np.zeros((0, 3, 3))
    return np.array([[t.a, t.b, t.c] for t in triangles], dtype=float)


def min_distance_to_mesh(point: Vec3, tris: np.ndarray) -> float:
    """Exact distance from *point* to the nearest triangle, all at once.

    Vectorized Voronoi-region closest-point evaluation over every triangle;
    used as the independent audit of whatever the broadphase path did.
    """
    if tris.shape[0] == 0:
        return math.inf
    p = np.asarray(point, dtype=float)
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    ab = b - a
    ac = c - a
    ap = p - a
    d1 = np.einsum("ij,ij->i", ab, ap)
    d2 = np.einsum("ij,ij->i", ac, ap)
    bp = p - b
    d3 = np.einsum("ij,ij->i", ab, bp)
    d4 = np.einsum("ij,ij->i", ac, bp)
    cp = p - c
    d5 = np.einsum("ij,ij->i", ab, cp)
    d6 = np.einsum("ij,ij->i", ac, cp)

    vc = d1 * d4 - d3 * d2
    vb = d5 * d2 - d1 * d6
    va = d3 * d6 - d5 * d4

    def safe_div(num, den):
        return num / np.where(den == 0.0, 1.0, den)

    # Face case as the default, then overwrite in reverse priority order so
    # the first matching region of the scalar decision chain wins.
    denom = va + vb + vc
    v_face = safe_div(vb, denom)
    w_face = safe_div(vc, denom)
    closest = a + ab * v_face[:, None] + ac * w_face[:, None]

    w_bc = safe_div(d4 - d3, (d4 - d3) + (d5 - d6))
    on_bc = b + (c - b) * w_bc[:, None]
    mask = (va <= 0.0) & ((d4 - d3) >= 0.0) & ((d5 - d6) >= 0.0)
    closest = np.where(mask[:, None], on_bc, closest)

    w_ac = safe_div(d2, d2 - d6)
    on_ac = a + ac * w_ac[:, None]
    mask = (vb <= 0.0) & (d2 >= 0.0) & (d6 <= 0.0)
    closest = np.where(mask[:, None], on_ac, closest)

    mask = (d6 >= 0.0) & (d5 <= d6)
    closest = np.where(mask[:, None], c, closest)

    v_ab = safe_div(d1, d1 - d3)
    on_ab = a + ab * v_ab[:, None]
    mask = (vc <= 0.0) & (d1 >= 0.0) & (d3 <= 0.0)
    closest = np.where(mask[:, None], on_ab, closest)

    mask = (d3 >= 0.0) & (d4 <= d3)
    closest = np.where(mask[:, None], b, closest)

    mask = (d1 <= 0.0) & (d2 <= 0.0)
    closest = np.where(mask[:, None], a, closest)

    return float(np.sqrt(((p - closest) ** 2).sum(axis=1)).min())


def run_scenario(scenario: Scenario) -> dict[str, list[TrajectoryRecord]]:
    """Run *scenario* and return one record stream per algorithm.

    The returned dict has one entry for ``improved`` or ``legacy`` runs and
    both entries for ``algorithm = "both"``; both streams see identical
    inputs.  Raises ``ValueError`` when the start position penetrates the
    mesh.
    """
    triangles = scenario.mesh.load()
    world = build_world(triangles, DEFAULT_CELL_SIZE)
    radii = scenario.radii
    sphere_tris = mesh_array(triangles) / np.array(radii.as_tuple())[None, None, :]

    start_s = to_sphere_space(scenario.start, radii)
    start_dist = min_distance_to_mesh(start_s, sphere_tris)
    if start_dist < 1.0 - 1e-6:
        raise ValueError(
            f"scenario {scenario.name!r}: start position penetrates the mesh "
            f"(sphere-space distance {start_dist:.6f} < 1)"
        )

    algorithms = ALGORITHMS if scenario.algorithm == "both" else (scenario.algorithm,)
    improved_cfg = ResponseConfig(very_close_dist=scenario.epsilon)
    legacy_cfg = LegacyConfig(very_close_dist=scenario.epsilon,
                              max_recursion=scenario.legacy_max_recursion)

    out: dict[str, list[TrajectoryRecord]] = {}
    for algo in algorithms:
        view = EllipsoidWorldView(world, radii)
        pos_world = scenario.start
        pos_sphere = start_s
        records: list[TrajectoryRecord] = []
        for frame in range(scenario.frames):
            vel_sphere = to_sphere_space(scenario.velocity_for_frame(frame), radii)
            if algo == "improved":
                result = sphere_sweep(view, pos_sphere, vel_sphere, improved_cfg)
            else:
                result = collide_with_world_legacy(view, pos_sphere, vel_sphere, legacy_cfg)
            pos_sphere = result.final_pos
            new_world = from_sphere_space(pos_sphere, radii)
            records.append(TrajectoryRecord(
                frame=frame,
                position=new_world,
                iterations=result.iterations,
                min_mesh_distance=min_distance_to_mesh(pos_sphere, sphere_tris),
                displacement=distance(new_world, pos_world),
                planes_hit=len(result.planes),
            ))
            pos_world = new_world
        out[algo] = records
    return out


def report(records: list[TrajectoryRecord], fmt: str = "csv") -> str:
    """Render records as a CSV table or a JSON array with the same keys.

    Float fields use ``repr`` so identical runs produce byte-identical
    output.
    """
    if fmt == "csv":
        buf = StringIO()
        buf.write(",".join(REPORT_COLUMNS) + "\n")
        for r in records:
            buf.write(
                f"{r.frame},{r.position[0]!r},{r.position[1]!r},{r.position[2]!r},"
                f"{r.iterations},{r.min_mesh_distance!r},{r.displacement!r},{r.planes_hit}\n"
            )
        return buf.getvalue()
    if fmt == "json":
        rows = [
            {
                "frame": r.frame,
                "x": r.position[0],
                "y": r.position[1],
                "z": r.position[2],
                "iterations": r.iterations,
                "min_mesh_distance": r.min_mesh_distance,
                "displacement": r.displacement,
                "planes_hit": r.planes_hit,
            }
            for r in records
        ]
        return json.dumps(rows, indent=2) + "\n"
    raise ValueError(f"unknown report format {fmt!r} (use 'csv' or 'json')")


def summarize(records: list[TrajectoryRecord], epsilon: float,
              commanded_speeds: list[float] | None = None) -> dict:
    """Aggregate figures for a record stream.

    ``jitter_count`` is the number of frames whose displacement exceeds the
    tolerance.  ``snag_count`` counts frames where motion was commanded
    (speed above ``10 * epsilon``) but the sphere barely moved (under a
    tenth of the commanded distance) -- the sticking-on-edges symptom.
    """
    summary = {
        "frames": len(records),
        "max_iterations": max((r.iterations for r in records), default=0),
        "min_mesh_distance": min((r.min_mesh_distance for r in records), default=None),
        "jitter_count": sum(1 for r in records if r.displacement > epsilon),
        "snag_count": 0,
    }
    if commanded_speeds is not None:
        summary["snag_count"] = sum(
            1 for r, speed in zip(records, commanded_speeds)
            if speed > 10.0 * epsilon and r.displacement < 0.1 * speed
        )
    return summary
