"""Shared test oracles and fixture builders.

Everything in here is written independently of the library internals so
it can stand as the reference side of equivalence checks: its own
segment-sphere test, its own run stitching, its own scenario generator.
"""

from __future__ import annotations

import math
import random

from ipnv.astro import EphemerisTable, StateSample, sample_times
from ipnv.contacts import (
    OCCLUSION_SHRINK,
    SPEED_OF_LIGHT_KM_S,
    ContactPlan,
    ContactWindow,
    SceneGeometry,
)
from ipnv.scenario_io import (
    NodeConfig,
    PlanetConfig,
    ScenarioBundle,
    ScenarioConfig,
    StarConfig,
)

Vec = tuple[float, float, float]


def oracle_segment_clears_sphere(a: Vec, b: Vec, center: Vec, radius: float) -> bool:
    """Independent closest-point-on-segment test against one shrunk sphere."""
    ax, ay, az = a
    dx = b[0] - ax
    dy = b[1] - ay
    dz = b[2] - az
    seg = dx * dx + dy * dy + dz * dz
    fx = center[0] - ax
    fy = center[1] - ay
    fz = center[2] - az
    t = (fx * dx + fy * dy + fz * dz) / seg
    if t < 0.0:
        t = 0.0
    elif t > 1.0:
        t = 1.0
    gx = t * dx - fx
    gy = t * dy - fy
    gz = t * dz - fz
    r = radius * (1.0 - OCCLUSION_SHRINK)
    return gx * gx + gy * gy + gz * gz >= r * r


def brute_force_plan(geometry: SceneGeometry) -> ContactPlan:
    """Reference detector: per-step scalar scan plus naive run stitching.

    Mirrors the documented contract only: visibility of the open segment
    between absolute node positions against the star and every planet,
    maximal visible runs spanning sample times, single-sample runs
    dropped, both directions emitted, sorted by (source, dest, start).
    """
    some_table = next(iter(geometry.planet_tables.values()))
    times = some_table.times
    steps = len(times)

    def planet_at(name: str, k: int) -> Vec:
        return geometry.planet_tables[name].samples[k].position

    def node_abs(node_id: str, k: int) -> Vec:
        local = geometry.node_tables[node_id].samples[k].position
        host = planet_at(geometry.node_host[node_id], k)
        return (host[0] + local[0], host[1] + local[1], host[2] + local[2])

    def visible(node_a: str, node_b: str, k: int) -> bool:
        pa = node_abs(node_a, k)
        pb = node_abs(node_b, k)
        if not oracle_segment_clears_sphere(pa, pb, (0.0, 0.0, 0.0), geometry.star_radius):
            return False
        for name in geometry.planet_tables:
            if not oracle_segment_clears_sphere(
                pa, pb, planet_at(name, k), geometry.planet_radii[name]
            ):
                return False
        return True

    windows: list[ContactWindow] = []
    node_ids = sorted(geometry.node_tables)
    for i, node_a in enumerate(node_ids):
        for node_b in node_ids[i + 1 :]:
            run_start: int | None = None
            for k in range(steps + 1):
                now_visible = k < steps and visible(node_a, node_b, k)
                if now_visible and run_start is None:
                    run_start = k
                elif not now_visible and run_start is not None:
                    if k - 1 > run_start:
                        windows.append(
                            ContactWindow(node_a, node_b, times[run_start], times[k - 1])
                        )
                        windows.append(
                            ContactWindow(node_b, node_a, times[run_start], times[k - 1])
                        )
                    run_start = None
    windows.sort(key=lambda w: (w.source_id, w.destination_id, w.start))
    return ContactPlan(windows=tuple(windows))


def static_table(position: Vec, times: list[float], step: float) -> EphemerisTable:
    return EphemerisTable(
        samples=tuple(StateSample(time=t, position=position) for t in times), step=step
    )


def moving_table(positions: list[Vec], times: list[float], step: float) -> EphemerisTable:
    return EphemerisTable(
        samples=tuple(StateSample(time=t, position=p) for t, p in zip(times, positions)),
        step=step,
    )


def line_tables(
    base_owlt_s: float, owlt_rate: float, span: float
) -> tuple[EphemerisTable, EphemerisTable]:
    """Absolute tables realizing owlt(t) = base + rate*t with a receding
    source and a static destination (so arrival refinement is exact)."""
    c = SPEED_OF_LIGHT_KM_S
    source = moving_table(
        [(base_owlt_s * c, 0.0, 0.0), ((base_owlt_s + owlt_rate * span) * c, 0.0, 0.0)],
        [0.0, span],
        span,
    )
    destination = static_table((0.0, 0.0, 0.0), [0.0, span], span)
    return source, destination


def random_scene(seed: int) -> SceneGeometry:
    """Randomized small scenario: 1-2 planets, 2-4 nodes, <= 200 steps.

    Scales are chosen so occlusion toggles often: planets wander inside a
    box comparable to their radii, nodes hover near their host.
    """
    rng = random.Random(seed)
    steps = rng.randint(5, 200)
    step = rng.choice([10.0, 30.0, 60.0])
    times = [k * step for k in range(steps)]
    star_radius = rng.uniform(50.0, 400.0)

    def wander(scale: float, around: Vec) -> list[Vec]:
        x, y, z = around
        points = []
        vx, vy, vz = (rng.uniform(-scale, scale) for _ in range(3))
        for _ in times:
            points.append((x, y, z))
            x += vx + rng.uniform(-scale, scale) * 0.2
            y += vy + rng.uniform(-scale, scale) * 0.2
            z += vz + rng.uniform(-scale, scale) * 0.2
        return points

    planet_tables = {}
    planet_radii = {}
    planet_names = ["P1", "P2"][: rng.randint(1, 2)]
    for name in planet_names:
        anchor = tuple(rng.uniform(-3000.0, 3000.0) for _ in range(3))
        planet_tables[name] = moving_table(wander(rng.uniform(5.0, 40.0), anchor), times, step)
        planet_radii[name] = rng.uniform(80.0, 600.0)

    node_tables = {}
    node_host = {}
    for n in range(rng.randint(2, 4)):
        node_id = f"n{n + 1}"
        host = rng.choice(planet_names)
        shell = planet_radii[host] * rng.uniform(1.05, 4.0)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        phi = rng.uniform(-1.2, 1.2)
        anchor = (
            shell * math.cos(phi) * math.cos(theta),
            shell * math.cos(phi) * math.sin(theta),
            shell * math.sin(phi),
        )
        node_tables[node_id] = moving_table(
            wander(rng.uniform(1.0, 30.0), anchor), times, step
        )
        node_host[node_id] = host

    return SceneGeometry(
        star_name="S",
        star_radius=star_radius,
        planet_tables=planet_tables,
        planet_radii=planet_radii,
        node_tables=node_tables,
        node_host=node_host,
    )


def random_bundle(seed: int) -> ScenarioBundle:
    """Property-style generator for full scenario bundles.

    Exercises off-grid end times, step > span, empty node lists, colored
    and colorless contacts, and negative epochs.
    """
    rng = random.Random(seed)
    start = rng.uniform(-1e6, 1e6)
    end = start + rng.uniform(50.0, 5000.0)
    step = rng.choice([rng.uniform(5.0, 300.0), rng.uniform(5000.0, 9000.0)])
    times = sample_times(start, end, step)

    planet_names = [f"World{chr(65 + i)}" for i in range(rng.randint(1, 3))]
    planets = []
    node_ids: list[str] = []
    for name in planet_names:
        nodes = []
        for _ in range(rng.randint(0, 3)):
            node_id = f"node_{len(node_ids) + 1}"
            node_ids.append(node_id)
            nodes.append(NodeConfig(id=node_id, name=f"Node {node_id}"))
        planets.append(
            PlanetConfig(name=name, radius=rng.uniform(100.0, 7000.0), nodes=tuple(nodes))
        )
    config = ScenarioConfig(
        simulation_start=start,
        simulation_end=end,
        step=step,
        star=StarConfig(name="Sol", radius=rng.uniform(1e5, 7e5)),
        planets=tuple(planets),
    )

    def random_positions() -> list[Vec]:
        x, y, z = (rng.uniform(-1e8, 1e8) for _ in range(3))
        out = []
        for _ in times:
            out.append((x, y, z))
            x += rng.uniform(-100.0, 100.0)
            y += rng.uniform(-100.0, 100.0)
            z += rng.uniform(-100.0, 100.0)
        return out

    planet_tables = {}
    for planet in planets:
        samples = tuple(
            StateSample(
                time=t,
                position=p,
                rotation=(rng.uniform(0, 360), rng.uniform(0, 360), rng.uniform(0, 360)),
            )
            for t, p in zip(times, random_positions())
        )
        planet_tables[planet.name] = EphemerisTable(samples=samples, step=step)
    node_tables = {
        node_id: moving_table(random_positions(), times, step) for node_id in node_ids
    }

    windows = []
    if len(node_ids) >= 2:
        for source in node_ids:
            for destination in node_ids:
                if source == destination or rng.random() < 0.5:
                    continue
                t = start
                for _ in range(rng.randint(0, 3)):
                    t0 = t + rng.uniform(1.0, 50.0)
                    t1 = t0 + rng.uniform(1.0, 200.0)
                    if t1 > end:
                        break
                    color = (
                        (rng.randint(0, 255), rng.randint(0, 255), rng.randint(0, 255))
                        if rng.random() < 0.5
                        else None
                    )
                    windows.append(ContactWindow(source, destination, t0, t1, color=color))
                    t = t1
    windows.sort(key=lambda w: (w.source_id, w.destination_id, w.start))
    return ScenarioBundle(
        config=config,
        contact_plan=ContactPlan(windows=tuple(windows)),
        planet_tables=planet_tables,
        node_tables=node_tables,
    )
