"""Command-line front end.

    ipnv generate <definition.json> <output-dir> [--refine S] [--light-time]
    ipnv contacts <bundle-dir> [--diff] [--refine S] [--light-time]
    ipnv export <bundle-dir> --format ion|hdtn [--rate B] [--ranges] [--epoch T]
    ipnv validate <bundle-dir>
    ipnv stats <bundle-dir>
    ipnv serve <bundle-dir> [--host H] [--port N] [--viewer DIR]

Exit codes: 0 success, 1 validation or usage problem, 2 I/O failure.
Every successful command records a run_manifest.json (tool version,
input hashes, parameters, outputs, duration) next to its outputs; all
file writes go through temp-file-plus-rename so failures never leave
partial output. IPNV_LOG=debug|info|warning|error controls logging.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__
from .exporters import ExportOptions, build_node_map, export_hdtn, export_ion
from .pipeline import (
    generate_bundle,
    plan_statistics,
    recompute_plan,
    window_max_owlt,
)
from .scenario_io import (
    CONTACT_PLAN_FILE,
    atomic_write,
    bundle_file_names,
    load_bundle,
    read_definition,
    store_bundle,
    write_contact_plan,
)
from .server import create_server, serve_forever

log = logging.getLogger("ipnv")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

MANIFEST_FILE = "run_manifest.json"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # funnel argparse failures to exit 1
        raise UsageError(message)


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _hash_files(directory: Path, names: list[str]) -> dict[str, str]:
    return {
        name: _sha256((directory / name).read_bytes())
        for name in names
        if (directory / name).is_file()
    }


def _write_manifest(
    directory: Path,
    command: str,
    parameters: dict,
    inputs: dict[str, str],
    outputs: list[str],
    started: float,
) -> None:
    manifest = {
        "tool": "ipnv",
        "version": __version__,
        "command": command,
        "parameters": parameters,
        "inputs": inputs,
        "outputs": outputs,
        "duration_seconds": round(time.perf_counter() - started, 6),
    }
    atomic_write(directory / MANIFEST_FILE, (json.dumps(manifest, indent=2) + "\n").encode())


def cmd_generate(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    definition_path = Path(args.definition)
    raw = definition_path.read_bytes()
    definition = read_definition(raw)
    span = definition.simulation_end - definition.simulation_start
    if definition.step > span:
        print(
            f"warning: step {definition.step} s exceeds the scenario span {span} s; "
            "tables hold only the range endpoints",
            file=sys.stderr,
        )
    bundle = generate_bundle(
        definition,
        refine_tolerance=args.refine,
        light_time=args.light_time,
    )
    output_dir = Path(args.output)
    outputs = store_bundle(bundle, output_dir)
    _write_manifest(
        output_dir,
        "generate",
        {
            "definition": str(definition_path),
            "refine": args.refine,
            "light_time": args.light_time,
        },
        {definition_path.name: _sha256(raw)},
        outputs,
        started,
    )
    steps = len(next(iter(bundle.planet_tables.values())).times)
    print(
        f"generated {output_dir}: {len(bundle.config.planets)} planets + star, "
        f"{len(bundle.config.node_ids())} nodes, {steps} steps, "
        f"{len(bundle.contact_plan)} contact windows"
    )
    return EXIT_OK


def cmd_contacts(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    directory = Path(args.bundle)
    bundle = load_bundle(directory)
    plan = recompute_plan(
        bundle, refine_tolerance=args.refine, light_time=args.light_time
    )
    inputs = _hash_files(directory, bundle_file_names(bundle.config))
    if args.diff:
        existing = {(w.source_id, w.destination_id, w.start, w.end) for w in bundle.contact_plan}
        recomputed = {(w.source_id, w.destination_id, w.start, w.end) for w in plan}
        missing = sorted(recomputed - existing)
        extra = sorted(existing - recomputed)
        for source, destination, start, end in missing:
            print(f"missing: {source} -> {destination} [{start}, {end}]")
        for source, destination, start, end in extra:
            print(f"extra: {source} -> {destination} [{start}, {end}]")
        if missing or extra:
            print(f"{len(missing)} missing, {len(extra)} extra")
            return EXIT_VALIDATION
        print(f"contact plan matches ({len(plan)} windows)")
        _write_manifest(
            directory,
            "contacts",
            {"diff": True, "refine": args.refine, "light_time": args.light_time},
            inputs,
            [],
            started,
        )
        return EXIT_OK
    atomic_write(directory / CONTACT_PLAN_FILE, write_contact_plan(plan))
    _write_manifest(
        directory,
        "contacts",
        {"diff": False, "refine": args.refine, "light_time": args.light_time},
        inputs,
        [CONTACT_PLAN_FILE],
        started,
    )
    print(f"wrote {len(plan)} contact windows")
    return EXIT_OK


def cmd_export(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    directory = Path(args.bundle)
    bundle = load_bundle(directory)
    options = ExportOptions(
        reference_epoch=(
            args.epoch if args.epoch is not None else bundle.config.simulation_start
        ),
        data_rate=args.rate,
        emit_ranges=args.ranges,
    )
    node_numbers = build_node_map(bundle.config)
    owlts = window_max_owlt(bundle)
    if args.format == "ion":
        output_name = "contactPlan.ionrc"
        payload = export_ion(bundle.contact_plan, owlts, node_numbers, options).encode()
    else:
        output_name = "contactPlan.hdtn.json"
        payload = export_hdtn(bundle.contact_plan, owlts, node_numbers, options)
    atomic_write(directory / output_name, payload)
    _write_manifest(
        directory,
        "export",
        {
            "format": args.format,
            "rate": args.rate,
            "ranges": args.ranges,
            "reference_epoch": options.reference_epoch,
        },
        _hash_files(directory, bundle_file_names(bundle.config)),
        [output_name],
        started,
    )
    print(f"exported {len(bundle.contact_plan)} contacts to {directory / output_name}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    directory = Path(args.bundle)
    bundle = load_bundle(directory)
    _write_manifest(
        directory,
        "validate",
        {},
        _hash_files(directory, bundle_file_names(bundle.config)),
        [],
        started,
    )
    print("OK")
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    directory = Path(args.bundle)
    bundle = load_bundle(directory)
    stats = plan_statistics(bundle)
    print(f"windows: {stats.window_count}")
    print(f"peak simultaneous windows: {stats.peak_simultaneous}")
    for (source, destination), pair in stats.pairs.items():
        print(
            f"{source} -> {destination}: count {pair.count}, "
            f"duration total {pair.total_duration:.1f} s / mean {pair.mean_duration:.1f} s "
            f"/ max {pair.max_duration:.1f} s, "
            f"midpoint owlt min {pair.min_owlt:.3f} s / mean {pair.mean_owlt:.3f} s "
            f"/ max {pair.max_owlt:.3f} s"
        )
    _write_manifest(
        directory,
        "stats",
        {},
        _hash_files(directory, bundle_file_names(bundle.config)),
        [],
        started,
    )
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    directory = Path(args.bundle)
    bundle = load_bundle(directory)
    server = create_server(
        directory, bundle, host=args.host, port=args.port, viewer_dir=args.viewer
    )
    _write_manifest(
        directory,
        "serve",
        {"host": args.host, "port": server.server_address[1], "viewer": args.viewer},
        _hash_files(directory, bundle_file_names(bundle.config)),
        [],
        started,
    )
    host, port = server.server_address[0], server.server_address[1]
    print(f"serving {directory} on http://{host}:{port}/ (Ctrl-C to stop)")
    serve_forever(server)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="ipnv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ipnv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    generate = sub.add_parser("generate", help="compute a scenario bundle from a definition")
    generate.add_argument("definition", help="scenario definition JSON")
    generate.add_argument("output", help="bundle output directory")
    generate.add_argument(
        "--refine",
        type=float,
        default=None,
        metavar="SECONDS",
        help="sharpen window boundaries by bisection to this tolerance",
    )
    generate.add_argument(
        "--light-time",
        action="store_true",
        help="shrink windows so a bit sent before the close still arrives",
    )
    generate.set_defaults(func=cmd_generate)

    contacts = sub.add_parser("contacts", help="recompute the contact plan of a bundle")
    contacts.add_argument("bundle", help="bundle directory")
    contacts.add_argument("--diff", action="store_true", help="report differences, do not overwrite")
    contacts.add_argument("--refine", type=float, default=None, metavar="SECONDS")
    contacts.add_argument("--light-time", action="store_true")
    contacts.set_defaults(func=cmd_contacts)

    export = sub.add_parser("export", help="write the plan in ION or HDTN form")
    export.add_argument("bundle", help="bundle directory")
    export.add_argument("--format", required=True, choices=["ion", "hdtn"])
    export.add_argument("--rate", type=float, default=1000.0, metavar="BYTES_PER_S")
    export.add_argument("--ranges", action="store_true", help="also emit ION range lines")
    export.add_argument(
        "--epoch",
        type=float,
        default=None,
        metavar="SECONDS",
        help="reference epoch for relative times (default: SimulationStartTime)",
    )
    export.set_defaults(func=cmd_export)

    validate = sub.add_parser("validate", help="cross-check a bundle directory")
    validate.add_argument("bundle", help="bundle directory")
    validate.set_defaults(func=cmd_validate)

    stats = sub.add_parser("stats", help="print contact plan statistics")
    stats.add_argument("bundle", help="bundle directory")
    stats.set_defaults(func=cmd_stats)

    serve = sub.add_parser("serve", help="serve a bundle (and viewer) over HTTP")
    serve.add_argument("bundle", help="bundle directory")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--viewer", default=None, metavar="DIR", help="built viewer assets to serve")
    serve.set_defaults(func=cmd_serve)
    return parser


def _configure_logging() -> None:
    level_name = os.environ.get("IPNV_LOG", "warning").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
