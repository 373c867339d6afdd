"""Reading, writing, and validation of the scenario file suite.

A scenario directory holds config.json, contactPlan.json, one
<PlanetName>.json per planet (positions plus rotation triples), and one
<node_id>.json per node (positions only, planet-local). Serialized key
names are part of the contract and never change. Readers ignore unknown
keys, accept numbers written either as JSON numbers or numeric strings,
and name the JSON path of whatever they reject.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from .astro import (
    EphemerisTable,
    GeodeticSite,
    KeplerianElements,
    RotationModel,
    StateSample,
)
from .contacts import ContactPlan, ContactWindow

CONFIG_FILE = "config.json"
CONTACT_PLAN_FILE = "contactPlan.json"

_UNSAFE_NAME_CHARS = set('/\\:\0')


class ScenarioParseError(ValueError):
    """Malformed JSON or a value of the wrong shape; carries the path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ScenarioValidationError(ValueError):
    """Structurally valid input that violates a scenario invariant."""


class BundleError(ScenarioValidationError):
    """A scenario directory is incomplete or internally inconsistent."""


def _load_json(data: bytes | str, *, context: str) -> Any:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(context, f"invalid JSON: {exc}") from exc


def _require(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise ScenarioParseError(path, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        raise ScenarioParseError(f"{path}.{key}" if path else key, "missing required key")
    return obj[key]


def _as_number(value: Any, path: str) -> float:
    # Payload numbers are JSON numbers, but numeric strings are accepted
    # on read for robustness.
    if isinstance(value, bool):
        raise ScenarioParseError(path, f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        number = float(value)
    elif isinstance(value, str):
        try:
            number = float(value)
        except ValueError:
            raise ScenarioParseError(path, f"expected a number, got {value!r}") from None
    else:
        raise ScenarioParseError(path, f"expected a number, got {type(value).__name__}")
    if not math.isfinite(number):
        raise ScenarioParseError(path, f"number must be finite, got {number}")
    return number


def _as_string(value: Any, path: str) -> str:
    if not isinstance(value, str) or not value:
        raise ScenarioParseError(path, f"expected a non-empty string, got {value!r}")
    return value


def _check_name(name: str, path: str) -> str:
    if name in (".", "..") or any(c in _UNSAFE_NAME_CHARS for c in name):
        raise ScenarioValidationError(f"{path}: {name!r} is not a usable file name")
    return name


@dataclass(frozen=True)
class NodeConfig:
    id: str
    name: str


@dataclass(frozen=True)
class PlanetConfig:
    name: str
    radius: float
    nodes: tuple[NodeConfig, ...] = ()

    def __post_init__(self) -> None:
        if not self.radius > 0.0:
            raise ScenarioValidationError(f"planet {self.name!r} radius must be positive")


@dataclass(frozen=True)
class StarConfig:
    name: str
    radius: float

    def __post_init__(self) -> None:
        if not self.radius > 0.0:
            raise ScenarioValidationError(f"star {self.name!r} radius must be positive")


@dataclass(frozen=True)
class ScenarioConfig:
    """Time range, star, planets, and the nodes attached to each planet."""

    simulation_start: float
    simulation_end: float
    step: float
    star: StarConfig
    planets: tuple[PlanetConfig, ...]

    def __post_init__(self) -> None:
        if self.simulation_end < self.simulation_start:
            raise ScenarioValidationError("SimulationEndTime before SimulationStartTime")
        if self.simulation_end == self.simulation_start:
            raise ScenarioValidationError("SimulationEndTime equals SimulationStartTime")
        if not self.step > 0.0:
            raise ScenarioValidationError(f"Step must be positive, got {self.step}")
        _check_name(self.star.name, "Star.Name")
        seen_planets: set[str] = set()
        seen_nodes: set[str] = set()
        for p, planet in enumerate(self.planets):
            _check_name(planet.name, f"Planets[{p}].Name")
            if planet.name in seen_planets:
                raise ScenarioValidationError(f"duplicate planet name {planet.name!r}")
            seen_planets.add(planet.name)
            for n, node in enumerate(planet.nodes):
                _check_name(node.id, f"Planets[{p}].Nodes[{n}].ID")
                if node.id in seen_nodes:
                    raise ScenarioValidationError(f"duplicate node ID {node.id!r}")
                if node.id in seen_planets or node.id == self.star.name:
                    raise ScenarioValidationError(
                        f"node ID {node.id!r} collides with a body name"
                    )
                seen_nodes.add(node.id)

    def node_ids(self) -> list[str]:
        return [node.id for planet in self.planets for node in planet.nodes]

    def node_hosts(self) -> dict[str, str]:
        return {
            node.id: planet.name for planet in self.planets for node in planet.nodes
        }

    def planet_radii(self) -> dict[str, float]:
        return {planet.name: planet.radius for planet in self.planets}


def read_config(data: bytes | str) -> ScenarioConfig:
    obj = _load_json(data, context=CONFIG_FILE)
    time = _require(obj, "Time", "")
    star = _require(obj, "Star", "")
    planets_raw = _require(obj, "Planets", "")
    if not isinstance(planets_raw, list):
        raise ScenarioParseError("Planets", "expected an array")
    planets = []
    for p, planet_raw in enumerate(planets_raw):
        nodes_raw = _require(planet_raw, "Nodes", f"Planets[{p}]")
        if not isinstance(nodes_raw, list):
            raise ScenarioParseError(f"Planets[{p}].Nodes", "expected an array")
        nodes = tuple(
            NodeConfig(
                id=_as_string(_require(node_raw, "ID", f"Planets[{p}].Nodes[{n}]"),
                              f"Planets[{p}].Nodes[{n}].ID"),
                name=_as_string(_require(node_raw, "Name", f"Planets[{p}].Nodes[{n}]"),
                                f"Planets[{p}].Nodes[{n}].Name"),
            )
            for n, node_raw in enumerate(nodes_raw)
        )
        planets.append(
            PlanetConfig(
                name=_as_string(_require(planet_raw, "Name", f"Planets[{p}]"), f"Planets[{p}].Name"),
                radius=_as_number(_require(planet_raw, "Radius", f"Planets[{p}]"), f"Planets[{p}].Radius"),
                nodes=nodes,
            )
        )
    return ScenarioConfig(
        simulation_start=_as_number(_require(time, "SimulationStartTime", "Time"), "Time.SimulationStartTime"),
        simulation_end=_as_number(_require(time, "SimulationEndTime", "Time"), "Time.SimulationEndTime"),
        step=_as_number(_require(time, "Step", "Time"), "Time.Step"),
        star=StarConfig(
            name=_as_string(_require(star, "Name", "Star"), "Star.Name"),
            radius=_as_number(_require(star, "Radius", "Star"), "Star.Radius"),
        ),
        planets=tuple(planets),
    )


def _dump(obj: Any) -> bytes:
    return (json.dumps(obj, indent=2) + "\n").encode("utf-8")


def write_config(config: ScenarioConfig) -> bytes:
    return _dump(
        {
            "Time": {
                "SimulationStartTime": config.simulation_start,
                "SimulationEndTime": config.simulation_end,
                "Step": config.step,
            },
            "Star": {"Name": config.star.name, "Radius": config.star.radius},
            "Planets": [
                {
                    "Name": planet.name,
                    "Radius": planet.radius,
                    "Nodes": [{"ID": node.id, "Name": node.name} for node in planet.nodes],
                }
                for planet in config.planets
            ],
        }
    )


def read_contact_plan(data: bytes | str) -> ContactPlan:
    obj = _load_json(data, context=CONTACT_PLAN_FILE)
    entries = _require(obj, "ContactPlan", "")
    if not isinstance(entries, list):
        raise ScenarioParseError("ContactPlan", "expected an array")
    windows = []
    for i, entry in enumerate(entries):
        path = f"ContactPlan[{i}]"
        source = _as_string(_require(entry, "SourceID", path), f"{path}.SourceID")
        destination = _as_string(_require(entry, "DestinationID", path), f"{path}.DestinationID")
        start = _as_number(_require(entry, "StartTime", path), f"{path}.StartTime")
        end = _as_number(_require(entry, "EndTime", path), f"{path}.EndTime")
        color = None
        if "Color" in entry:
            color_raw = entry["Color"]
            if (
                not isinstance(color_raw, list)
                or len(color_raw) != 3
                or any(isinstance(c, bool) or not isinstance(c, int) for c in color_raw)
            ):
                raise ScenarioParseError(f"{path}.Color", "expected an array of three integers")
            if any(not 0 <= c <= 255 for c in color_raw):
                raise ScenarioParseError(f"{path}.Color", f"components must be in 0..255, got {color_raw}")
            color = tuple(color_raw)
        try:
            windows.append(
                ContactWindow(source_id=source, destination_id=destination, start=start, end=end, color=color)
            )
        except ValueError as exc:
            raise ScenarioValidationError(f"{path}: {exc}") from exc
    try:
        return ContactPlan(windows=tuple(windows))
    except ValueError as exc:
        raise ScenarioValidationError(str(exc)) from exc


def write_contact_plan(plan: ContactPlan) -> bytes:
    entries = []
    for w in plan:
        entry: dict[str, Any] = {
            "SourceID": w.source_id,
            "DestinationID": w.destination_id,
            "StartTime": w.start,
            "EndTime": w.end,
        }
        if w.color is not None:
            entry["Color"] = list(w.color)
        entries.append(entry)
    return _dump({"ContactPlan": entries})


def read_ephemeris(data: bytes | str, kind: str) -> EphemerisTable:
    """Parse a planet or node position file.

    Planet entries must carry RotationX/Y/Z (degrees); node entries must
    not carry any rotation key.
    """
    if kind not in ("planet", "node"):
        raise ValueError(f"kind must be 'planet' or 'node', got {kind!r}")
    obj = _load_json(data, context="positions")
    entries = _require(obj, "Positions", "")
    if not isinstance(entries, list) or not entries:
        raise ScenarioParseError("Positions", "expected a non-empty array")
    samples = []
    previous_time = None
    for i, entry in enumerate(entries):
        path = f"Positions[{i}]"
        t = _as_number(_require(entry, "Time", path), f"{path}.Time")
        position = (
            _as_number(_require(entry, "PositionX", path), f"{path}.PositionX"),
            _as_number(_require(entry, "PositionY", path), f"{path}.PositionY"),
            _as_number(_require(entry, "PositionZ", path), f"{path}.PositionZ"),
        )
        has_rotation = any(k in entry for k in ("RotationX", "RotationY", "RotationZ"))
        if kind == "node":
            if has_rotation:
                raise ScenarioValidationError(f"{path}: rotation present on node file")
            rotation = None
        else:
            if not all(k in entry for k in ("RotationX", "RotationY", "RotationZ")):
                raise ScenarioValidationError(f"{path}: rotation missing on planet file")
            rotation = (
                _as_number(entry["RotationX"], f"{path}.RotationX"),
                _as_number(entry["RotationY"], f"{path}.RotationY"),
                _as_number(entry["RotationZ"], f"{path}.RotationZ"),
            )
        if previous_time is not None and t <= previous_time:
            raise ScenarioValidationError(
                f"{path}.Time: times must be strictly increasing, got {previous_time} then {t}"
            )
        previous_time = t
        samples.append(StateSample(time=t, position=position, rotation=rotation))
    step = samples[1].time - samples[0].time if len(samples) >= 2 else 0.0
    try:
        return EphemerisTable(samples=tuple(samples), step=step)
    except ValueError as exc:
        raise ScenarioValidationError(str(exc)) from exc


def write_ephemeris(table: EphemerisTable, kind: str) -> bytes:
    if kind not in ("planet", "node"):
        raise ValueError(f"kind must be 'planet' or 'node', got {kind!r}")
    if kind == "planet" and not table.has_rotation:
        raise ScenarioValidationError("planet table lacks rotation triples")
    if kind == "node" and table.has_rotation:
        raise ScenarioValidationError("node table must not carry rotation triples")
    entries = []
    for s in table.samples:
        entry: dict[str, Any] = {
            "Time": s.time,
            "PositionX": s.position[0],
            "PositionY": s.position[1],
            "PositionZ": s.position[2],
        }
        if s.rotation is not None:
            entry["RotationX"] = s.rotation[0]
            entry["RotationY"] = s.rotation[1]
            entry["RotationZ"] = s.rotation[2]
        entries.append(entry)
    return _dump({"Positions": entries})


@dataclass(frozen=True)
class ScenarioBundle:
    """A fully cross-checked scenario: config, plan, and one table per
    declared planet and node, all spanning the configured time range."""

    config: ScenarioConfig
    contact_plan: ContactPlan
    planet_tables: Mapping[str, EphemerisTable]
    node_tables: Mapping[str, EphemerisTable]

    def __post_init__(self) -> None:
        config = self.config
        declared_planets = {p.name for p in config.planets}
        declared_nodes = set(config.node_ids())
        for name in declared_planets - set(self.planet_tables):
            raise BundleError(f"missing position table for planet {name!r}")
        for name in set(self.planet_tables) - declared_planets:
            raise BundleError(f"position table for undeclared planet {name!r}")
        for node_id in declared_nodes - set(self.node_tables):
            raise BundleError(f"missing position table for node {node_id!r}")
        for node_id in set(self.node_tables) - declared_nodes:
            raise BundleError(f"position table for undeclared node {node_id!r}")
        for label, table in list(self.planet_tables.items()) + list(self.node_tables.items()):
            if table.start > config.simulation_start or table.end < config.simulation_end:
                raise BundleError(
                    f"table for {label!r} spans [{table.start}, {table.end}] but the "
                    f"scenario needs [{config.simulation_start}, {config.simulation_end}]"
                )
        for name, table in self.planet_tables.items():
            if not table.has_rotation:
                raise BundleError(f"planet table {name!r} lacks rotation triples")
        for node_id, table in self.node_tables.items():
            if table.has_rotation:
                raise BundleError(f"node table {node_id!r} carries rotation triples")
        for w in self.contact_plan:
            for endpoint in (w.source_id, w.destination_id):
                if endpoint not in declared_nodes:
                    raise BundleError(f"contact references unknown node {endpoint!r}")


def atomic_write(path: Path, data: bytes) -> None:
    """Write via a temp file in the same directory plus atomic rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def bundle_file_names(config: ScenarioConfig) -> list[str]:
    names = [CONFIG_FILE, CONTACT_PLAN_FILE]
    names.extend(f"{planet.name}.json" for planet in config.planets)
    names.extend(f"{node_id}.json" for node_id in config.node_ids())
    return names


def load_bundle(directory: Path | str) -> ScenarioBundle:
    directory = Path(directory)

    def read_file(name: str) -> bytes:
        path = directory / name
        if not path.is_file():
            raise BundleError(f"missing scenario file: {name}")
        return path.read_bytes()

    def in_file(name: str, exc: ValueError) -> ValueError:
        if isinstance(exc, BundleError):
            return exc
        return ScenarioValidationError(f"{name}: {exc}")

    try:
        config = read_config(read_file(CONFIG_FILE))
    except ValueError as exc:
        raise in_file(CONFIG_FILE, exc) from exc
    try:
        plan = read_contact_plan(read_file(CONTACT_PLAN_FILE))
    except ValueError as exc:
        raise in_file(CONTACT_PLAN_FILE, exc) from exc
    planet_tables = {}
    for planet in config.planets:
        name = f"{planet.name}.json"
        try:
            planet_tables[planet.name] = read_ephemeris(read_file(name), "planet")
        except ValueError as exc:
            raise in_file(name, exc) from exc
    node_tables = {}
    for node_id in config.node_ids():
        name = f"{node_id}.json"
        try:
            node_tables[node_id] = read_ephemeris(read_file(name), "node")
        except ValueError as exc:
            raise in_file(name, exc) from exc
    return ScenarioBundle(
        config=config,
        contact_plan=plan,
        planet_tables=planet_tables,
        node_tables=node_tables,
    )


def store_bundle(bundle: ScenarioBundle, directory: Path | str) -> list[str]:
    """Write the four-file suite; returns the file names written."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    payload: list[tuple[str, bytes]] = [
        (CONFIG_FILE, write_config(bundle.config)),
        (CONTACT_PLAN_FILE, write_contact_plan(bundle.contact_plan)),
    ]
    payload.extend(
        (f"{name}.json", write_ephemeris(table, "planet"))
        for name, table in bundle.planet_tables.items()
    )
    payload.extend(
        (f"{node_id}.json", write_ephemeris(table, "node"))
        for node_id, table in bundle.node_tables.items()
    )
    for name, data in payload:
        atomic_write(directory / name, data)
    return [name for name, _ in payload]


# --- Scenario definitions (generator input) ---------------------------------


@dataclass(frozen=True)
class OrbiterDefinition:
    id: str
    name: str
    elements: KeplerianElements  # host-planet-centered


@dataclass(frozen=True)
class LanderDefinition:
    id: str
    name: str
    site: GeodeticSite


@dataclass(frozen=True)
class PlanetDefinition:
    name: str
    radius: float
    mu: float
    elements: KeplerianElements  # star-centered
    rotation: RotationModel
    nodes: tuple[OrbiterDefinition | LanderDefinition, ...] = ()

    def __post_init__(self) -> None:
        if not self.mu > 0.0:
            raise ScenarioValidationError(f"planet {self.name!r} mu must be positive")


@dataclass(frozen=True)
class StarDefinition:
    name: str
    radius: float
    mu: float

    def __post_init__(self) -> None:
        if not self.mu > 0.0:
            raise ScenarioValidationError(f"star {self.name!r} mu must be positive")


@dataclass(frozen=True)
class ScenarioDefinition:
    """Generator input: the configuration plus orbital elements, rotation
    models, and node placements needed to compute every table."""

    simulation_start: float
    simulation_end: float
    step: float
    star: StarDefinition
    planets: tuple[PlanetDefinition, ...]

    def __post_init__(self) -> None:
        self.to_config()  # reuse all structural config invariants
        for planet in self.planets:
            for node in planet.nodes:
                if isinstance(node, OrbiterDefinition):
                    if node.elements.semi_major_axis <= planet.radius:
                        raise ScenarioValidationError(
                            f"orbiter {node.id!r} semi-major axis "
                            f"{node.elements.semi_major_axis} km does not clear host "
                            f"{planet.name!r} radius {planet.radius} km"
                        )

    def to_config(self) -> ScenarioConfig:
        return ScenarioConfig(
            simulation_start=self.simulation_start,
            simulation_end=self.simulation_end,
            step=self.step,
            star=StarConfig(name=self.star.name, radius=self.star.radius),
            planets=tuple(
                PlanetConfig(
                    name=planet.name,
                    radius=planet.radius,
                    nodes=tuple(NodeConfig(id=n.id, name=n.name) for n in planet.nodes),
                )
                for planet in self.planets
            ),
        )


def _elements_from_json(obj: Any, path: str, mu: float) -> KeplerianElements:
    try:
        return KeplerianElements(
            semi_major_axis=_as_number(_require(obj, "SemiMajorAxis", path), f"{path}.SemiMajorAxis"),
            eccentricity=_as_number(_require(obj, "Eccentricity", path), f"{path}.Eccentricity"),
            inclination=math.radians(_as_number(_require(obj, "Inclination", path), f"{path}.Inclination")),
            raan=math.radians(_as_number(_require(obj, "Raan", path), f"{path}.Raan")),
            arg_periapsis=math.radians(
                _as_number(_require(obj, "ArgPeriapsis", path), f"{path}.ArgPeriapsis")
            ),
            mean_anomaly_at_epoch=math.radians(
                _as_number(_require(obj, "MeanAnomalyAtEpoch", path), f"{path}.MeanAnomalyAtEpoch")
            ),
            epoch=_as_number(_require(obj, "Epoch", path), f"{path}.Epoch"),
            mu=mu,
        )
    except ScenarioParseError:
        raise
    except ValueError as exc:
        raise ScenarioValidationError(f"{path}: {exc}") from exc


def _rotation_from_json(obj: Any, path: str) -> RotationModel:
    try:
        return RotationModel(
            period=_as_number(_require(obj, "Period", path), f"{path}.Period"),
            obliquity=math.radians(_as_number(_require(obj, "Obliquity", path), f"{path}.Obliquity")),
            node_longitude=math.radians(
                _as_number(_require(obj, "NodeLongitude", path), f"{path}.NodeLongitude")
            ),
            rotation_at_epoch=math.radians(
                _as_number(_require(obj, "RotationAtEpoch", path), f"{path}.RotationAtEpoch")
            ),
            epoch=_as_number(_require(obj, "Epoch", path), f"{path}.Epoch"),
        )
    except ScenarioParseError:
        raise
    except ValueError as exc:
        raise ScenarioValidationError(f"{path}: {exc}") from exc


def read_definition(data: bytes | str) -> ScenarioDefinition:
    """Parse a scenario definition (angles in degrees, distances in km).

    See the README for the full schema. Each node carries either an
    "Orbit" (host-centered elements) or a "Site" (surface placement).
    """
    obj = _load_json(data, context="definition")
    time = _require(obj, "Time", "")
    star_raw = _require(obj, "Star", "")
    star = StarDefinition(
        name=_as_string(_require(star_raw, "Name", "Star"), "Star.Name"),
        radius=_as_number(_require(star_raw, "Radius", "Star"), "Star.Radius"),
        mu=_as_number(_require(star_raw, "Mu", "Star"), "Star.Mu"),
    )
    planets_raw = _require(obj, "Planets", "")
    if not isinstance(planets_raw, list):
        raise ScenarioParseError("Planets", "expected an array")
    planets = []
    for p, planet_raw in enumerate(planets_raw):
        path = f"Planets[{p}]"
        planet_mu = _as_number(_require(planet_raw, "Mu", path), f"{path}.Mu")
        nodes: list[OrbiterDefinition | LanderDefinition] = []
        nodes_raw = _require(planet_raw, "Nodes", path)
        if not isinstance(nodes_raw, list):
            raise ScenarioParseError(f"{path}.Nodes", "expected an array")
        for n, node_raw in enumerate(nodes_raw):
            node_path = f"{path}.Nodes[{n}]"
            node_id = _as_string(_require(node_raw, "ID", node_path), f"{node_path}.ID")
            node_name = _as_string(_require(node_raw, "Name", node_path), f"{node_path}.Name")
            if "Orbit" in node_raw and "Site" in node_raw:
                raise ScenarioParseError(node_path, "node has both Orbit and Site")
            if "Orbit" in node_raw:
                nodes.append(
                    OrbiterDefinition(
                        id=node_id,
                        name=node_name,
                        elements=_elements_from_json(node_raw["Orbit"], f"{node_path}.Orbit", planet_mu),
                    )
                )
            elif "Site" in node_raw:
                site_raw = node_raw["Site"]
                site_path = f"{node_path}.Site"
                try:
                    site = GeodeticSite(
                        latitude=math.radians(
                            _as_number(_require(site_raw, "Latitude", site_path), f"{site_path}.Latitude")
                        ),
                        longitude=math.radians(
                            _as_number(_require(site_raw, "Longitude", site_path), f"{site_path}.Longitude")
                        ),
                        altitude=_as_number(site_raw.get("Altitude", 0.0), f"{site_path}.Altitude"),
                    )
                except ScenarioParseError:
                    raise
                except ValueError as exc:
                    raise ScenarioValidationError(f"{site_path}: {exc}") from exc
                nodes.append(LanderDefinition(id=node_id, name=node_name, site=site))
            else:
                raise ScenarioParseError(node_path, "node needs either an Orbit or a Site")
        planets.append(
            PlanetDefinition(
                name=_as_string(_require(planet_raw, "Name", path), f"{path}.Name"),
                radius=_as_number(_require(planet_raw, "Radius", path), f"{path}.Radius"),
                mu=planet_mu,
                elements=_elements_from_json(_require(planet_raw, "Orbit", path), f"{path}.Orbit", star.mu),
                rotation=_rotation_from_json(_require(planet_raw, "Rotation", path), f"{path}.Rotation"),
                nodes=tuple(nodes),
            )
        )
    try:
        return ScenarioDefinition(
            simulation_start=_as_number(_require(time, "SimulationStartTime", "Time"), "Time.SimulationStartTime"),
            simulation_end=_as_number(_require(time, "SimulationEndTime", "Time"), "Time.SimulationEndTime"),
            step=_as_number(_require(time, "Step", "Time"), "Time.Step"),
            star=star,
            planets=tuple(planets),
        )
    except ScenarioValidationError:
        raise
    except ValueError as exc:
        raise ScenarioValidationError(str(exc)) from exc
