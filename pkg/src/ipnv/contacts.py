"""Line-of-sight contact detection, one-way light time, boundary
refinement, and light-time filtering of transmission windows.

Detection walks every unordered node pair across a shared sample grid,
occludes against the star and every planet as spheres, and stitches
maximal visible runs into directed contact windows. All functions are
pure; pair detection is independent and merged by a deterministic sort.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

import numpy as np

from .astro import Epoch, EphemerisTable, Vec3, interpolate

SPEED_OF_LIGHT_KM_S = 299792.458

# Relative shrink applied to every occluder radius so a lander exactly on
# the surface is not blocked by its own planet for above-horizon links.
OCCLUSION_SHRINK = 1e-6

DEFAULT_BISECTION_TOLERANCE_S = 1.0


class GridMismatchError(ValueError):
    """Tables handed to detection do not share one sample grid."""


class TableCoverageError(ValueError):
    """An ephemeris table does not span the interval a query needs."""


@dataclass(frozen=True)
class Occluder:
    """Sphere snapshot: center at some instant, configured radius."""

    center: Vec3
    radius: float
    name: str = ""

    def __post_init__(self) -> None:
        if not self.radius > 0.0:
            raise ValueError(f"occluder radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class ContactWindow:
    """Directed visibility interval between two node IDs."""

    source_id: str
    destination_id: str
    start: Epoch
    end: Epoch
    color: tuple[int, int, int] | None = None

    def __post_init__(self) -> None:
        if not self.source_id or not self.destination_id:
            raise ValueError("contact endpoints must be non-empty node IDs")
        if self.source_id == self.destination_id:
            raise ValueError(f"contact endpoints must differ, got {self.source_id!r} twice")
        if not self.start < self.end:
            raise ValueError(
                f"contact start must precede end, got [{self.start}, {self.end}]"
            )
        if self.color is not None:
            if len(self.color) != 3:
                raise ValueError("color must be an (R, G, B) triple")
            for c in self.color:
                if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c <= 255:
                    raise ValueError(f"color components must be integers in 0..255, got {c!r}")

    @property
    def duration(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class ContactPlan:
    """Ordered contact windows; per directed pair they are disjoint and
    sorted by start time."""

    windows: tuple[ContactWindow, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "windows", tuple(self.windows))
        last_per_pair: dict[tuple[str, str], ContactWindow] = {}
        for w in self.windows:
            key = (w.source_id, w.destination_id)
            prev = last_per_pair.get(key)
            if prev is not None and w.start <= prev.end:
                raise ValueError(
                    f"windows for {key[0]}->{key[1]} overlap or are unsorted: "
                    f"[{prev.start}, {prev.end}] then [{w.start}, {w.end}]"
                )
            last_per_pair[key] = w

    def __iter__(self) -> Iterator[ContactWindow]:
        return iter(self.windows)

    def __len__(self) -> int:
        return len(self.windows)


@dataclass(frozen=True)
class SceneGeometry:
    """Everything detection needs: heliocentric planet tables,
    planet-local node tables, which planet hosts each node, and sphere
    radii for the star and planets."""

    star_name: str
    star_radius: float
    planet_tables: Mapping[str, EphemerisTable]
    planet_radii: Mapping[str, float]
    node_tables: Mapping[str, EphemerisTable]
    node_host: Mapping[str, str]

    def __post_init__(self) -> None:
        if not self.star_radius > 0.0:
            raise ValueError("star radius must be positive")
        for name in self.planet_tables:
            if name not in self.planet_radii:
                raise ValueError(f"no radius configured for planet {name!r}")
            if not self.planet_radii[name] > 0.0:
                raise ValueError(f"planet {name!r} radius must be positive")
        for node_id, host in self.node_host.items():
            if host not in self.planet_tables:
                raise ValueError(f"node {node_id!r} references unknown planet {host!r}")
        for node_id in self.node_tables:
            if node_id not in self.node_host:
                raise ValueError(f"no host planet recorded for node {node_id!r}")


def owlt(a: Vec3, b: Vec3) -> float:
    """One-way light time |a - b| / c in seconds."""
    return (
        math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2)
        / SPEED_OF_LIGHT_KM_S
    )


def los_visible(a: Vec3, b: Vec3, occluders: Sequence[Occluder]) -> bool:
    """True unless the open segment a-b passes through an occluder sphere.

    Each sphere is shrunk by the relative tolerance OCCLUSION_SHRINK and
    tested with the closest-point-on-segment distance in float64.
    """
    ax, ay, az = a
    dx = b[0] - ax
    dy = b[1] - ay
    dz = b[2] - az
    seg = dx * dx + dy * dy + dz * dz
    if seg == 0.0:
        raise ValueError("line-of-sight endpoints coincide")
    for occ in occluders:
        fx = occ.center[0] - ax
        fy = occ.center[1] - ay
        fz = occ.center[2] - az
        t = (fx * dx + fy * dy + fz * dz) / seg
        if t < 0.0:
            t = 0.0
        elif t > 1.0:
            t = 1.0
        gx = t * dx - fx
        gy = t * dy - fy
        gz = t * dz - fz
        r = occ.radius * (1.0 - OCCLUSION_SHRINK)
        if gx * gx + gy * gy + gz * gz < r * r:
            return False
    return True


@dataclass(frozen=True)
class _GridScene:
    """Per-grid-index absolute positions, precomputed as float64 arrays."""

    times: tuple[float, ...]
    node_positions: dict[str, np.ndarray]
    occluder_positions: list[np.ndarray]
    occluder_radii: list[float]


def _table_positions(table: EphemerisTable) -> np.ndarray:
    return np.array([s.position for s in table.samples], dtype=np.float64)


def _build_grid_scene(geometry: SceneGeometry) -> _GridScene:
    grids = {name: t.times for name, t in geometry.planet_tables.items()}
    grids.update({node: t.times for node, t in geometry.node_tables.items()})
    if not grids:
        raise ValueError("geometry holds no ephemeris tables")
    reference_name, reference = next(iter(grids.items()))
    for name, times in grids.items():
        if times != reference:
            raise GridMismatchError(
                f"table for {name!r} is not on the same time grid as {reference_name!r}"
            )

    planet_pos = {name: _table_positions(t) for name, t in geometry.planet_tables.items()}
    node_pos = {
        node: planet_pos[geometry.node_host[node]] + _table_positions(t)
        for node, t in geometry.node_tables.items()
    }
    n = len(reference)
    occluder_positions = [np.zeros((n, 3), dtype=np.float64)]  # the star at the origin
    occluder_radii = [geometry.star_radius]
    for name in geometry.planet_tables:
        occluder_positions.append(planet_pos[name])
        occluder_radii.append(geometry.planet_radii[name])
    return _GridScene(
        times=reference,
        node_positions=node_pos,
        occluder_positions=occluder_positions,
        occluder_radii=occluder_radii,
    )


def _visibility_mask(scene: _GridScene, node_a: str, node_b: str) -> np.ndarray:
    """Per-grid-step visibility, arithmetic matched term for term with
    los_visible so both paths agree bit for bit."""
    pa = scene.node_positions[node_a]
    pb = scene.node_positions[node_b]
    ax, ay, az = pa[:, 0], pa[:, 1], pa[:, 2]
    dx = pb[:, 0] - ax
    dy = pb[:, 1] - ay
    dz = pb[:, 2] - az
    seg = dx * dx + dy * dy + dz * dz
    if np.any(seg == 0.0):
        raise ValueError(f"nodes {node_a!r} and {node_b!r} coincide at a sample time")
    visible = np.ones(len(seg), dtype=bool)
    for centers, radius in zip(scene.occluder_positions, scene.occluder_radii):
        fx = centers[:, 0] - ax
        fy = centers[:, 1] - ay
        fz = centers[:, 2] - az
        t = (fx * dx + fy * dy + fz * dz) / seg
        np.clip(t, 0.0, 1.0, out=t)
        gx = t * dx - fx
        gy = t * dy - fy
        gz = t * dz - fz
        r = radius * (1.0 - OCCLUSION_SHRINK)
        visible &= gx * gx + gy * gy + gz * gz >= r * r
    return visible


def _visible_runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Maximal [first, last] index runs of True."""
    flags = mask.astype(np.int8)
    edges = np.diff(flags)
    starts = list(np.flatnonzero(edges == 1) + 1)
    ends = list(np.flatnonzero(edges == -1))
    if flags[0]:
        starts.insert(0, 0)
    if flags[-1]:
        ends.append(len(flags) - 1)
    return list(zip(starts, ends))


def _node_absolute_at(geometry: SceneGeometry, node_id: str, t: Epoch) -> Vec3:
    local = interpolate(geometry.node_tables[node_id], t).position
    host = interpolate(geometry.planet_tables[geometry.node_host[node_id]], t).position
    return (host[0] + local[0], host[1] + local[1], host[2] + local[2])


def _occluders_at(geometry: SceneGeometry, t: Epoch) -> list[Occluder]:
    occluders = [Occluder(center=(0.0, 0.0, 0.0), radius=geometry.star_radius, name=geometry.star_name)]
    for name, table in geometry.planet_tables.items():
        occluders.append(
            Occluder(
                center=interpolate(table, t).position,
                radius=geometry.planet_radii[name],
                name=name,
            )
        )
    return occluders


def _pair_visible_at(geometry: SceneGeometry, node_a: str, node_b: str, t: Epoch) -> bool:
    return los_visible(
        _node_absolute_at(geometry, node_a, t),
        _node_absolute_at(geometry, node_b, t),
        _occluders_at(geometry, t),
    )


def refine_boundary(
    geometry: SceneGeometry,
    node_a: str,
    node_b: str,
    t_before: Epoch,
    t_after: Epoch,
    tolerance: float = DEFAULT_BISECTION_TOLERANCE_S,
) -> Epoch:
    """Locate a visibility transition inside a bracketing interval.

    Bisects on interpolated positions until the bracket is narrower than
    ``tolerance`` and returns the midpoint of the final bracket. The two
    bracket ends must differ in visibility.
    """
    if not tolerance > 0.0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    if not t_before < t_after:
        raise ValueError("bracket must be ordered t_before < t_after")
    vis_lo = _pair_visible_at(geometry, node_a, node_b, t_before)
    vis_hi = _pair_visible_at(geometry, node_a, node_b, t_after)
    if vis_lo == vis_hi:
        raise ValueError(
            f"bracket [{t_before}, {t_after}] has identical visibility at both ends"
        )
    lo, hi = t_before, t_after
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if _pair_visible_at(geometry, node_a, node_b, mid) == vis_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def detect_contacts(
    geometry: SceneGeometry,
    refine_tolerance: float | None = None,
) -> ContactPlan:
    """Stitch per-step visibility into a directed contact plan.

    Every unordered node pair is tested at each grid time; maximal runs
    of visible samples become windows spanning [first visible, last
    visible] sample time. With ``refine_tolerance`` set, window edges
    interior to the scenario are sharpened by bisection, and
    single-sample runs survive as refined short windows; without it they
    are dropped. Both directions of every window are emitted.
    """
    scene = _build_grid_scene(geometry)
    times = scene.times
    last = len(times) - 1
    node_ids = sorted(geometry.node_tables)
    windows: list[ContactWindow] = []
    for i, node_a in enumerate(node_ids):
        for node_b in node_ids[i + 1 :]:
            mask = _visibility_mask(scene, node_a, node_b)
            for first, final in _visible_runs(mask):
                if refine_tolerance is None:
                    if first == final:
                        continue
                    start, end = times[first], times[final]
                else:
                    start = (
                        times[first]
                        if first == 0
                        else refine_boundary(
                            geometry, node_a, node_b, times[first - 1], times[first], refine_tolerance
                        )
                    )
                    end = (
                        times[final]
                        if final == last
                        else refine_boundary(
                            geometry, node_a, node_b, times[final], times[final + 1], refine_tolerance
                        )
                    )
                    if not start < end:
                        continue
                windows.append(ContactWindow(node_a, node_b, start, end))
                windows.append(ContactWindow(node_b, node_a, start, end))
    windows.sort(key=lambda w: (w.source_id, w.destination_id, w.start))
    return ContactPlan(windows=tuple(windows))


def filter_light_time(
    window: ContactWindow,
    source_table: EphemerisTable,
    destination_table: EphemerisTable,
    tolerance: float = DEFAULT_BISECTION_TOLERANCE_S,
) -> ContactWindow | None:
    """Shrink a geometric window to the interval from which a transmitted
    bit still arrives before the window closes.

    Both tables must hold absolute (heliocentric) positions and cover the
    window. The latest feasible transmit time t* satisfies
    t* + owlt(t*) <= end, located by bisection of the monotone slack
    function with one fixed-point refinement of the arrival time. Returns
    None when not even the window start is feasible.
    """
    if not tolerance > 0.0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    for label, table in (("source", source_table), ("destination", destination_table)):
        if table.start > window.start or table.end < window.end:
            raise TableCoverageError(
                f"{label} table spans [{table.start}, {table.end}] but the window "
                f"needs [{window.start}, {window.end}]"
            )

    destination_horizon = destination_table.end

    def slack(t: float) -> float:
        src = interpolate(source_table, t).position
        first_pass = owlt(src, interpolate(destination_table, t).position)
        arrival = t + first_pass
        if arrival > destination_horizon:
            # Beyond table coverage implies beyond the window end, since
            # the window never outruns the table.
            return math.inf
        refined = owlt(src, interpolate(destination_table, arrival).position)
        return t + refined - window.end

    if slack(window.start) > 0.0:
        return None
    lo, hi = window.start, window.end
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if slack(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    if not lo > window.start:
        return None
    return ContactWindow(
        source_id=window.source_id,
        destination_id=window.destination_id,
        start=window.start,
        end=lo,
        color=window.color,
    )
