"""HTTP serving of a validated scenario bundle.

Static files only: the bundle's JSON suite, optional viewer assets, and
one manifest endpoint (GET /api/bundle) listing the files plus an echo
of the configuration. Every response carries permissive CORS headers so
a viewer served from anywhere can fetch the data.
"""

from __future__ import annotations

import json
import logging
from http import HTTPStatus
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import urlsplit

from .scenario_io import CONFIG_FILE, ScenarioBundle, bundle_file_names

log = logging.getLogger("ipnv.server")

_CONTENT_TYPES = {
    ".json": "application/json",
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript",
    ".mjs": "text/javascript",
    ".css": "text/css",
    ".png": "image/png",
    ".jpg": "image/jpeg",
    ".svg": "image/svg+xml",
    ".ico": "image/x-icon",
    ".map": "application/json",
    ".wasm": "application/wasm",
}


def _content_type(name: str) -> str:
    return _CONTENT_TYPES.get(Path(name).suffix.lower(), "application/octet-stream")


def create_server(
    directory: Path | str,
    bundle: ScenarioBundle,
    host: str = "127.0.0.1",
    port: int = 8000,
    viewer_dir: Path | str | None = None,
) -> ThreadingHTTPServer:
    """Build (but do not start) the bundle server; raises OSError when
    the port is taken."""
    directory = Path(directory)
    viewer = Path(viewer_dir) if viewer_dir is not None else None
    bundle_files = set(bundle_file_names(bundle.config))
    api_manifest = json.dumps(
        {
            "files": sorted(bundle_files),
            "config": json.loads((directory / CONFIG_FILE).read_bytes()),
        },
        indent=2,
    ).encode("utf-8")

    class BundleRequestHandler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def _send(self, status: HTTPStatus, content_type: str, body: bytes) -> None:
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, OPTIONS")
            self.end_headers()
            if self.command != "HEAD":
                self.wfile.write(body)

        def _not_found(self) -> None:
            self._send(HTTPStatus.NOT_FOUND, "text/plain; charset=utf-8", b"not found\n")

        def do_OPTIONS(self) -> None:  # noqa: N802 (http.server naming)
            self._send(HTTPStatus.NO_CONTENT, "text/plain", b"")

        def do_HEAD(self) -> None:  # noqa: N802
            self.do_GET()

        def do_GET(self) -> None:  # noqa: N802
            name = urlsplit(self.path).path.lstrip("/")
            if name == "api/bundle":
                self._send(HTTPStatus.OK, "application/json", api_manifest)
                return
            if name in bundle_files:
                self._send(HTTPStatus.OK, "application/json", (directory / name).read_bytes())
                return
            if viewer is not None:
                if name == "":
                    name = "index.html"
                candidate = (viewer / name).resolve()
                if candidate.is_file() and candidate.is_relative_to(viewer.resolve()):
                    self._send(HTTPStatus.OK, _content_type(name), candidate.read_bytes())
                    return
            self._not_found()

        def log_message(self, format: str, *args) -> None:
            log.debug("%s %s", self.address_string(), format % args)

    return ThreadingHTTPServer((host, port), BundleRequestHandler)


def serve_forever(server: ThreadingHTTPServer) -> None:
    """Run until interrupted, then close the listening socket cleanly."""
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
