"""Contact plan export to ION ionrc commands and HDTN contact-plan JSON.

Both formats share one rounding and ordering convention: times become
integer seconds relative to a reference epoch with the start floored and
the end ceiled (the exported window only ever widens), and entries are
sorted by (start, source number, destination number). String node IDs
are translated through an injective node-number map.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .astro import Epoch
from .contacts import ContactPlan
from .scenario_io import ScenarioConfig


class ExportError(ValueError):
    """Unusable node map, owlt list, or relative-time overflow."""


@dataclass(frozen=True)
class ExportOptions:
    """Knobs shared by every exporter.

    ``reference_epoch`` is the zero of exported relative times;
    ``data_rate`` (bytes/second) is attached to every contact since LOS
    geometry carries no rate of its own.
    """

    reference_epoch: Epoch
    data_rate: float = 1000.0
    emit_ranges: bool = False

    def __post_init__(self) -> None:
        if not self.data_rate > 0.0:
            raise ExportError(f"data rate must be positive, got {self.data_rate}")


def build_node_map(
    config: ScenarioConfig, overrides: Mapping[str, int] | None = None
) -> dict[str, int]:
    """Assign a positive node number to every configured node ID.

    Overrides win; the rest are numbered with the smallest unused
    positive integers in configuration declaration order.
    """
    ids = config.node_ids()
    overrides = dict(overrides or {})
    for node_id in overrides:
        if node_id not in ids:
            raise ExportError(f"override targets unknown node ID {node_id!r}")
    for node_id, number in overrides.items():
        if isinstance(number, bool) or not isinstance(number, int) or number < 1:
            raise ExportError(f"node number for {node_id!r} must be a positive integer")
    if len(set(overrides.values())) != len(overrides):
        raise ExportError(f"duplicate override node number in {overrides}")

    mapping: dict[str, int] = {}
    used = set(overrides.values())
    candidate = 1
    for node_id in ids:
        if node_id in overrides:
            mapping[node_id] = overrides[node_id]
            continue
        while candidate in used:
            candidate += 1
        mapping[node_id] = candidate
        used.add(candidate)
    return mapping


@dataclass(frozen=True)
class _Row:
    start: int
    end: int
    source: int
    destination: int
    owlt: float


def _rows(
    plan: ContactPlan,
    window_owlt: Sequence[float],
    node_numbers: Mapping[str, int],
    options: ExportOptions,
) -> list[_Row]:
    if len(window_owlt) != len(plan):
        raise ExportError(
            f"owlt list has {len(window_owlt)} entries for {len(plan)} windows"
        )
    numbers = dict(node_numbers)
    if len(set(numbers.values())) != len(numbers):
        raise ExportError("node number map must be injective")
    rows = []
    for window, owlt_s in zip(plan, window_owlt):
        for endpoint in (window.source_id, window.destination_id):
            if endpoint not in numbers:
                raise ExportError(f"no node number mapped for {endpoint!r}")
        start = math.floor(window.start - options.reference_epoch)
        end = math.ceil(window.end - options.reference_epoch)
        if start < 0:
            raise ExportError(
                f"window starting at {window.start} precedes the reference epoch "
                f"{options.reference_epoch}"
            )
        rows.append(
            _Row(
                start=start,
                end=end,
                source=numbers[window.source_id],
                destination=numbers[window.destination_id],
                owlt=float(owlt_s),
            )
        )
    rows.sort(key=lambda r: (r.start, r.source, r.destination, r.end))
    return rows


def _format_rate(rate: float) -> str:
    return str(int(rate)) if rate == int(rate) else repr(rate)


def export_ion(
    plan: ContactPlan,
    window_owlt: Sequence[float],
    node_numbers: Mapping[str, int],
    options: ExportOptions,
) -> str:
    """Render `a contact` (and optionally `a range`) ionrc lines.

    Ranges are per unordered pair and window, with the owlt ceiled to
    whole seconds; on equal sort keys a range precedes its contact.
    """
    rows = _rows(plan, window_owlt, node_numbers, options)
    rate = _format_rate(options.data_rate)
    lines: list[tuple[tuple[int, int, int, int], str]] = []
    for row in rows:
        lines.append(
            (
                (row.start, row.source, row.destination, 1),
                f"a contact +{row.start} +{row.end} {row.source} {row.destination} {rate}",
            )
        )
    if options.emit_ranges:
        ranges: dict[tuple[int, int, int, int], float] = {}
        for row in rows:
            lo, hi = sorted((row.source, row.destination))
            key = (row.start, lo, hi, row.end)
            ranges[key] = max(row.owlt, ranges.get(key, 0.0))
        for (start, lo, hi, end), owlt_s in ranges.items():
            lines.append(
                (
                    (start, lo, hi, 0),
                    f"a range +{start} +{end} {lo} {hi} {math.ceil(owlt_s)}",
                )
            )
    lines.sort(key=lambda item: item[0])
    if not lines:
        return ""
    return "\n".join(text for _, text in lines) + "\n"


def export_hdtn(
    plan: ContactPlan,
    window_owlt: Sequence[float],
    node_numbers: Mapping[str, int],
    options: ExportOptions,
) -> bytes:
    """Render the HDTN contact-plan JSON document (2-space indent)."""
    rows = _rows(plan, window_owlt, node_numbers, options)
    rate = options.data_rate
    contacts = [
        {
            "contact": index,
            "source": row.source,
            "dest": row.destination,
            "startTime": row.start,
            "endTime": row.end,
            "rate": int(rate) if rate == int(rate) else rate,
            "owlt": round(row.owlt, 3),
        }
        for index, row in enumerate(rows)
    ]
    return (json.dumps({"contacts": contacts}, indent=2) + "\n").encode("utf-8")
