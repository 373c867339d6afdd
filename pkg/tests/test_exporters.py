"""ION/HDTN export conventions: rounding, ordering, node numbering."""

from __future__ import annotations

import json
import math

import pytest

from ipnv.contacts import ContactPlan, ContactWindow
from ipnv.exporters import (
    ExportError,
    ExportOptions,
    build_node_map,
    export_hdtn,
    export_ion,
)
from ipnv.scenario_io import NodeConfig, PlanetConfig, ScenarioConfig, StarConfig


def config_with_nodes(*node_ids: str) -> ScenarioConfig:
    return ScenarioConfig(
        simulation_start=0.0,
        simulation_end=100.0,
        step=10.0,
        star=StarConfig(name="Sun", radius=695700.0),
        planets=(
            PlanetConfig(
                name="Earth",
                radius=6371.0,
                nodes=tuple(NodeConfig(id=i, name=i.upper()) for i in node_ids),
            ),
        ),
    )


MAP12 = {"node_1": 1, "node_2": 2}


class TestBuildNodeMap:
    def test_sequential_by_declaration(self):
        config = config_with_nodes("node_1", "node_2", "node_3")
        assert build_node_map(config) == {"node_1": 1, "node_2": 2, "node_3": 3}

    def test_override_skips_used_numbers(self):
        config = config_with_nodes("node_1", "node_2", "node_3")
        assert build_node_map(config, {"node_2": 10}) == {
            "node_1": 1,
            "node_2": 10,
            "node_3": 2,
        }

    def test_override_collision_with_sequential(self):
        config = config_with_nodes("node_1", "node_2", "node_3")
        assert build_node_map(config, {"node_1": 2}) == {
            "node_1": 2,
            "node_2": 1,
            "node_3": 3,
        }

    def test_duplicate_override_rejected(self):
        config = config_with_nodes("node_1", "node_2")
        with pytest.raises(ExportError, match="duplicate"):
            build_node_map(config, {"node_1": 5, "node_2": 5})

    def test_unknown_override_rejected(self):
        config = config_with_nodes("node_1")
        with pytest.raises(ExportError, match="unknown node ID"):
            build_node_map(config, {"node_9": 1})

    def test_nonpositive_override_rejected(self):
        config = config_with_nodes("node_1")
        with pytest.raises(ExportError, match="positive integer"):
            build_node_map(config, {"node_1": 0})


class TestExportIon:
    def test_floor_ceil_convention(self):
        # Oracle: floor(100.2)=100, ceil(200.7)=201.
        assert (math.floor(100.2), math.ceil(200.7)) == (100, 201)
        plan = ContactPlan(windows=(ContactWindow("node_1", "node_2", 100.2, 200.7),))
        text = export_ion(plan, [0.5], MAP12, ExportOptions(reference_epoch=0.0))
        assert text == "a contact +100 +201 1 2 1000\n"

    def test_empty_plan_empty_output(self):
        assert export_ion(ContactPlan(), [], MAP12, ExportOptions(reference_epoch=0.0)) == ""

    def test_range_owlt_ceiled_per_unordered_pair(self):
        plan = ContactPlan(
            windows=(
                ContactWindow("node_1", "node_2", 0.0, 600.0),
                ContactWindow("node_2", "node_1", 0.0, 600.0),
            )
        )
        text = export_ion(
            plan,
            [499.005, 499.005],
            MAP12,
            ExportOptions(reference_epoch=0.0, emit_ranges=True),
        )
        lines = text.splitlines()
        assert lines == [
            "a range +0 +600 1 2 500",
            "a contact +0 +600 1 2 1000",
            "a contact +0 +600 2 1 1000",
        ]

    def test_lines_sorted_by_start_then_numbers(self):
        plan = ContactPlan(
            windows=(
                ContactWindow("node_2", "node_1", 50.0, 80.0),
                ContactWindow("node_1", "node_2", 10.0, 20.0),
                ContactWindow("node_1", "node_2", 50.0, 80.0),
            )
        )
        text = export_ion(plan, [1.0, 1.0, 1.0], MAP12, ExportOptions(reference_epoch=0.0))
        assert text.splitlines() == [
            "a contact +10 +20 1 2 1000",
            "a contact +50 +80 1 2 1000",
            "a contact +50 +80 2 1 1000",
        ]

    def test_reference_epoch_shift(self):
        plan = ContactPlan(windows=(ContactWindow("node_1", "node_2", 1000.5, 1100.0),))
        text = export_ion(plan, [1.0], MAP12, ExportOptions(reference_epoch=1000.0))
        assert text == "a contact +0 +100 1 2 1000\n"

    def test_negative_relative_time_rejected(self):
        plan = ContactPlan(windows=(ContactWindow("node_1", "node_2", 10.0, 20.0),))
        with pytest.raises(ExportError, match="reference epoch"):
            export_ion(plan, [1.0], MAP12, ExportOptions(reference_epoch=50.0))

    def test_unmapped_id_rejected(self):
        plan = ContactPlan(windows=(ContactWindow("node_1", "ghost", 0.0, 10.0),))
        with pytest.raises(ExportError, match="ghost"):
            export_ion(plan, [1.0], MAP12, ExportOptions(reference_epoch=0.0))

    def test_owlt_length_mismatch_rejected(self):
        plan = ContactPlan(windows=(ContactWindow("node_1", "node_2", 0.0, 10.0),))
        with pytest.raises(ExportError, match="owlt list"):
            export_ion(plan, [], MAP12, ExportOptions(reference_epoch=0.0))

    def test_fractional_rate_rendered(self):
        plan = ContactPlan(windows=(ContactWindow("node_1", "node_2", 0.0, 10.0),))
        text = export_ion(plan, [1.0], MAP12, ExportOptions(reference_epoch=0.0, data_rate=12.5))
        assert text.endswith(" 12.5\n")

    def test_nonpositive_rate_rejected(self):
        with pytest.raises(ExportError, match="data rate"):
            ExportOptions(reference_epoch=0.0, data_rate=0.0)


class TestExportHdtn:
    def test_single_window_shape(self):
        plan = ContactPlan(windows=(ContactWindow("node_1", "node_2", 100.2, 200.7),))
        payload = json.loads(export_hdtn(plan, [499.0047838], MAP12, ExportOptions(reference_epoch=0.0)))
        assert payload == {
            "contacts": [
                {
                    "contact": 0,
                    "source": 1,
                    "dest": 2,
                    "startTime": 100,
                    "endTime": 201,
                    "rate": 1000,
                    "owlt": 499.005,
                }
            ]
        }

    def test_empty_plan(self):
        payload = json.loads(export_hdtn(ContactPlan(), [], MAP12, ExportOptions(reference_epoch=0.0)))
        assert payload == {"contacts": []}

    def test_indices_follow_start_order(self):
        plan = ContactPlan(
            windows=(
                ContactWindow("node_2", "node_1", 500.0, 600.0),
                ContactWindow("node_1", "node_2", 0.0, 100.0),
            )
        )
        payload = json.loads(export_hdtn(plan, [1.0, 1.0], MAP12, ExportOptions(reference_epoch=0.0)))
        entries = [(c["contact"], c["startTime"], c["source"]) for c in payload["contacts"]]
        assert entries == [(0, 0, 1), (1, 500, 2)]

    def test_cross_format_agreement(self):
        plan = ContactPlan(
            windows=(
                ContactWindow("node_1", "node_2", 3.2, 10.9),
                ContactWindow("node_2", "node_1", 3.2, 10.9),
                ContactWindow("node_1", "node_2", 50.0, 61.5),
            )
        )
        owlts = [7.0, 7.0, 8.2]
        options = ExportOptions(reference_epoch=0.0, data_rate=2000.0)
        ion_lines = export_ion(plan, owlts, MAP12, options).splitlines()
        hdtn = json.loads(export_hdtn(plan, owlts, MAP12, options))
        ion_tuples = []
        for line in ion_lines:
            parts = line.split()
            assert parts[:2] == ["a", "contact"]
            ion_tuples.append(
                (int(parts[2][1:]), int(parts[3][1:]), int(parts[4]), int(parts[5]), float(parts[6]))
            )
        hdtn_tuples = [
            (c["startTime"], c["endTime"], c["source"], c["dest"], float(c["rate"]))
            for c in hdtn["contacts"]
        ]
        assert ion_tuples == hdtn_tuples

    def test_count_preservation(self):
        plan = ContactPlan(
            windows=tuple(
                ContactWindow("node_1", "node_2", 100.0 * k, 100.0 * k + 50.0) for k in range(5)
            )
        )
        options = ExportOptions(reference_epoch=0.0)
        assert len(export_ion(plan, [1.0] * 5, MAP12, options).splitlines()) == 5
        assert len(json.loads(export_hdtn(plan, [1.0] * 5, MAP12, options))["contacts"]) == 5

    def test_determinism(self):
        plan = ContactPlan(
            windows=(
                ContactWindow("node_1", "node_2", 0.0, 10.0),
                ContactWindow("node_2", "node_1", 0.0, 10.0),
            )
        )
        options = ExportOptions(reference_epoch=0.0, emit_ranges=True)
        first = export_ion(plan, [3.3, 3.3], MAP12, options)
        second = export_ion(plan, [3.3, 3.3], MAP12, options)
        assert first == second
        assert export_hdtn(plan, [3.3, 3.3], MAP12, options) == export_hdtn(
            plan, [3.3, 3.3], MAP12, options
        )
