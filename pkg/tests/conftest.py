from __future__ import annotations

import json
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
DEMO_DEFINITION = REPO_ROOT / "scenarios" / "earth_mars_24h.json"


@pytest.fixture(scope="session")
def demo_definition_path() -> Path:
    return DEMO_DEFINITION


@pytest.fixture(scope="session")
def demo_bundle_dir(tmp_path_factory) -> Path:
    """The Earth+Mars 24 h / 60 s bundle, generated once per session."""
    from ipnv.pipeline import generate_bundle
    from ipnv.scenario_io import read_definition, store_bundle

    directory = tmp_path_factory.mktemp("demo_bundle")
    definition = read_definition(DEMO_DEFINITION.read_bytes())
    store_bundle(generate_bundle(definition), directory)
    return directory


def small_definition_dict() -> dict:
    """One planet, an orbiter and a lander, 30 minutes at 60 s."""
    return {
        "Time": {"SimulationStartTime": 0, "SimulationEndTime": 1800, "Step": 60},
        "Star": {"Name": "Sun", "Radius": 695700.0, "Mu": 132712440018.0},
        "Planets": [
            {
                "Name": "Earth",
                "Radius": 6371.0,
                "Mu": 398600.4418,
                "Orbit": {
                    "SemiMajorAxis": 149597870.7,
                    "Eccentricity": 0.01671,
                    "Inclination": 0.0,
                    "Raan": 0.0,
                    "ArgPeriapsis": 114.207,
                    "MeanAnomalyAtEpoch": 357.517,
                    "Epoch": 0,
                },
                "Rotation": {
                    "Period": 86164.0905,
                    "Obliquity": 0.0,
                    "NodeLongitude": 0.0,
                    "RotationAtEpoch": 0.0,
                    "Epoch": 0,
                },
                "Nodes": [
                    {
                        "ID": "node_1",
                        "Name": "Orbiter",
                        "Orbit": {
                            "SemiMajorAxis": 7000.0,
                            "Eccentricity": 0.0,
                            "Inclination": 0.0,
                            "Raan": 0.0,
                            "ArgPeriapsis": 0.0,
                            "MeanAnomalyAtEpoch": 0.0,
                            "Epoch": 0,
                        },
                    },
                    {
                        "ID": "node_2",
                        "Name": "Station",
                        "Site": {"Latitude": 0.0, "Longitude": 10.0, "Altitude": 0.0},
                    },
                ],
            }
        ],
    }


@pytest.fixture()
def small_definition_path(tmp_path) -> Path:
    path = tmp_path / "small_definition.json"
    path.write_text(json.dumps(small_definition_dict(), indent=2))
    return path
