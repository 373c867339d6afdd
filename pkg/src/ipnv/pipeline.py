"""Scenario generation and bundle-level computations.

Bridges the propagators to the file suite: samples every body of a
scenario definition onto the shared grid, detects contacts, applies the
optional light-time filter, and derives per-window OWLT values and plan
statistics for export and reporting.
"""

from __future__ import annotations

from dataclasses import dataclass

from .astro import EphemerisTable, StateSample, interpolate, sample_trajectory
from .contacts import (
    ContactPlan,
    SceneGeometry,
    detect_contacts,
    filter_light_time,
    owlt,
)
from .scenario_io import (
    LanderDefinition,
    OrbiterDefinition,
    ScenarioBundle,
    ScenarioConfig,
    ScenarioDefinition,
)


def build_tables(
    definition: ScenarioDefinition,
) -> tuple[dict[str, EphemerisTable], dict[str, EphemerisTable]]:
    """Sample every planet (heliocentric) and node (planet-local)."""
    start, end, step = definition.simulation_start, definition.simulation_end, definition.step
    planet_tables = {}
    node_tables = {}
    for planet in definition.planets:
        planet_tables[planet.name] = sample_trajectory(
            planet.elements, start, end, step, rotation=planet.rotation
        )
        for node in planet.nodes:
            if isinstance(node, OrbiterDefinition):
                node_tables[node.id] = sample_trajectory(node.elements, start, end, step)
            elif isinstance(node, LanderDefinition):
                node_tables[node.id] = sample_trajectory(
                    node.site,
                    start,
                    end,
                    step,
                    host_radius=planet.radius,
                    host_rotation=planet.rotation,
                )
    return planet_tables, node_tables


def scene_geometry(
    config: ScenarioConfig,
    planet_tables: dict[str, EphemerisTable],
    node_tables: dict[str, EphemerisTable],
) -> SceneGeometry:
    return SceneGeometry(
        star_name=config.star.name,
        star_radius=config.star.radius,
        planet_tables=planet_tables,
        planet_radii=config.planet_radii(),
        node_tables=node_tables,
        node_host=config.node_hosts(),
    )


def absolute_node_table(
    node_table: EphemerisTable, host_table: EphemerisTable
) -> EphemerisTable:
    """Planet-local positions shifted to the heliocentric frame."""
    samples = tuple(
        StateSample(
            time=local.time,
            position=(
                host.position[0] + local.position[0],
                host.position[1] + local.position[1],
                host.position[2] + local.position[2],
            ),
        )
        for local, host in zip(node_table.samples, host_table.samples)
    )
    return EphemerisTable(samples=samples, step=node_table.step)


def absolute_tables(
    config: ScenarioConfig,
    planet_tables: dict[str, EphemerisTable],
    node_tables: dict[str, EphemerisTable],
) -> dict[str, EphemerisTable]:
    hosts = config.node_hosts()
    return {
        node_id: absolute_node_table(table, planet_tables[hosts[node_id]])
        for node_id, table in node_tables.items()
    }


def apply_light_time_filter(
    plan: ContactPlan,
    config: ScenarioConfig,
    planet_tables: dict[str, EphemerisTable],
    node_tables: dict[str, EphemerisTable],
    tolerance: float = 1.0,
) -> ContactPlan:
    """Run the light-time filter over every window; infeasible windows drop."""
    absolute = absolute_tables(config, planet_tables, node_tables)
    kept = []
    for window in plan:
        filtered = filter_light_time(
            window, absolute[window.source_id], absolute[window.destination_id], tolerance
        )
        if filtered is not None:
            kept.append(filtered)
    return ContactPlan(windows=tuple(kept))


def generate_bundle(
    definition: ScenarioDefinition,
    refine_tolerance: float | None = None,
    light_time: bool = False,
    light_time_tolerance: float = 1.0,
) -> ScenarioBundle:
    """Full generation: tables, detection, optional filtering, bundle."""
    config = definition.to_config()
    planet_tables, node_tables = build_tables(definition)
    plan = detect_contacts(
        scene_geometry(config, planet_tables, node_tables), refine_tolerance
    )
    if light_time:
        plan = apply_light_time_filter(
            plan, config, planet_tables, node_tables, light_time_tolerance
        )
    return ScenarioBundle(
        config=config,
        contact_plan=plan,
        planet_tables=planet_tables,
        node_tables=node_tables,
    )


def recompute_plan(
    bundle: ScenarioBundle,
    refine_tolerance: float | None = None,
    light_time: bool = False,
    light_time_tolerance: float = 1.0,
) -> ContactPlan:
    """Re-detect contacts from a bundle's tables, ignoring its stored plan."""
    plan = detect_contacts(
        scene_geometry(bundle.config, dict(bundle.planet_tables), dict(bundle.node_tables)),
        refine_tolerance,
    )
    if light_time:
        plan = apply_light_time_filter(
            plan,
            bundle.config,
            dict(bundle.planet_tables),
            dict(bundle.node_tables),
            light_time_tolerance,
        )
    return plan


def _owlt_between(
    absolute: dict[str, EphemerisTable], source: str, destination: str, t: float
) -> float:
    return owlt(
        interpolate(absolute[source], t).position,
        interpolate(absolute[destination], t).position,
    )


def window_midpoint_owlt(bundle: ScenarioBundle) -> list[float]:
    """OWLT between each window's endpoints at the window midpoint."""
    absolute = absolute_tables(
        bundle.config, dict(bundle.planet_tables), dict(bundle.node_tables)
    )
    return [
        _owlt_between(absolute, w.source_id, w.destination_id, 0.5 * (w.start + w.end))
        for w in bundle.contact_plan
    ]


def window_max_owlt(bundle: ScenarioBundle) -> list[float]:
    """Largest OWLT across each window, scanned on the sample grid plus
    both window edges."""
    absolute = absolute_tables(
        bundle.config, dict(bundle.planet_tables), dict(bundle.node_tables)
    )
    grid = next(iter(absolute.values())).times if absolute else ()
    values = []
    for w in bundle.contact_plan:
        probes = [w.start, w.end]
        probes.extend(t for t in grid if w.start < t < w.end)
        values.append(
            max(_owlt_between(absolute, w.source_id, w.destination_id, t) for t in probes)
        )
    return values


@dataclass(frozen=True)
class PairStats:
    count: int
    total_duration: float
    mean_duration: float
    max_duration: float
    min_owlt: float
    mean_owlt: float
    max_owlt: float


@dataclass(frozen=True)
class PlanStats:
    pairs: dict[tuple[str, str], PairStats]
    window_count: int
    peak_simultaneous: int


def plan_statistics(bundle: ScenarioBundle) -> PlanStats:
    """Per-directed-pair durations and midpoint OWLTs, plus the peak
    number of windows active at one instant."""
    owlts = window_midpoint_owlt(bundle)
    per_pair: dict[tuple[str, str], list[tuple[float, float]]] = {}
    for w, mid_owlt in zip(bundle.contact_plan, owlts):
        per_pair.setdefault((w.source_id, w.destination_id), []).append(
            (w.duration, mid_owlt)
        )
    pairs = {}
    for key, rows in sorted(per_pair.items()):
        durations = [d for d, _ in rows]
        pair_owlts = [o for _, o in rows]
        pairs[key] = PairStats(
            count=len(rows),
            total_duration=sum(durations),
            mean_duration=sum(durations) / len(rows),
            max_duration=max(durations),
            min_owlt=min(pair_owlts),
            mean_owlt=sum(pair_owlts) / len(rows),
            max_owlt=max(pair_owlts),
        )

    # Sweep: starts count before ends so touching windows overlap.
    events = []
    for w in bundle.contact_plan:
        events.append((w.start, 0))
        events.append((w.end, 1))
    events.sort()
    active = peak = 0
    for _, kind in events:
        if kind == 0:
            active += 1
            peak = max(peak, active)
        else:
            active -= 1
    return PlanStats(
        pairs=pairs, window_count=len(bundle.contact_plan), peak_simultaneous=peak
    )
