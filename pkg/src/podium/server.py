"""Read-only HTTP server exposing a results file and the dashboard assets.

Endpoints:
  GET /api/results                 the full results document as JSON
  GET /api/export?format=csv|latex|json|html   table export, correct MIME type
  GET / and static paths           dashboard assets bundled as package data

All endpoint payloads are precomputed from the immutable results snapshot at
startup, so responses are byte-deterministic for a fixed file.
"""

from __future__ import annotations

import hashlib
import mimetypes
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from importlib import resources
from pathlib import Path, PurePosixPath
from urllib.parse import parse_qs, urlsplit

from .errors import EnvironmentFailure
from .results import (
    EXPORT_FORMATS,
    ResultsFile,
    export_content_type,
    export_table,
    read_results,
    results_to_json,
)

DEFAULT_PORT = 8501
DEFAULT_BIND = "127.0.0.1"
_CACHE_CONTROL = "public, max-age=0, must-revalidate"


@dataclass(frozen=True)
class ServerConfig:
    """Where to find the results and where to listen."""

    results_path: Path
    port: int = DEFAULT_PORT
    bind_address: str = DEFAULT_BIND


def _error_body(message: str) -> bytes:
    return (f'{{"error": "{message}"}}\n').encode("utf-8")


class ResultsServer(ThreadingHTTPServer):
    """HTTP server over one immutable results snapshot."""

    daemon_threads = True

    def __init__(self, config: ServerConfig, results: ResultsFile):
        self.results = results
        self.results_body = results_to_json(results)
        self.exports = {name: export_table(results, name) for name in EXPORT_FORMATS}
        try:
            super().__init__((config.bind_address, config.port), _Handler)
        except OSError as error:
            raise EnvironmentFailure(
                f"cannot listen on {config.bind_address}:{config.port}: {error}"
            ) from error

    @property
    def port(self) -> int:
        return self.server_address[1]


class _Handler(BaseHTTPRequestHandler):
    server: ResultsServer
    protocol_version = "HTTP/1.1"

    def log_message(self, format: str, *args) -> None:
        pass  # request logging off; tests and scripted use stay quiet

    def _send(self, status: int, content_type: str, body: bytes) -> None:
        etag = f'"{hashlib.sha256(body).hexdigest()[:32]}"'
        if status == 200 and self.headers.get("If-None-Match") == etag:
            self.send_response(304)
            self.send_header("ETag", etag)
            self.send_header("Cache-Control", _CACHE_CONTROL)
            self.send_header("Content-Length", "0")
            self.end_headers()
            return
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", _CACHE_CONTROL)
        if status == 200:
            self.send_header("ETag", etag)
        self.end_headers()
        self.wfile.write(body)

    def _send_export(self, query: dict[str, list[str]]) -> None:
        values = query.get("format", [])
        if len(values) != 1 or values[0].strip().lower() not in EXPORT_FORMATS:
            got = values[0] if values else "(missing)"
            supported = ", ".join(EXPORT_FORMATS)
            self._send(
                400,
                "application/json; charset=utf-8",
                _error_body(f"format must be one of {supported}; got {got}"),
            )
            return
        name = values[0].strip().lower()
        self._send(200, export_content_type(name), self.server.exports[name])

    def _send_asset(self, path: str) -> None:
        name = path.lstrip("/") or "index.html"
        parts = PurePosixPath(name).parts
        if any(part in ("..", "") or part.startswith(".") for part in parts):
            self._send(404, "application/json; charset=utf-8", _error_body("not found"))
            return
        asset = resources.files("podium").joinpath("dashboard")
        for part in parts:
            asset = asset.joinpath(part)
        if not asset.is_file():
            self._send(404, "application/json; charset=utf-8", _error_body("not found"))
            return
        content_type = mimetypes.guess_type(name)[0] or "application/octet-stream"
        if content_type.startswith("text/") or content_type in (
            "application/javascript",
            "application/json",
        ):
            content_type += "; charset=utf-8"
        self._send(200, content_type, asset.read_bytes())

    def do_GET(self) -> None:
        url = urlsplit(self.path)
        if url.path == "/api/results":
            self._send(200, "application/json; charset=utf-8", self.server.results_body)
        elif url.path == "/api/export":
            self._send_export(parse_qs(url.query))
        elif url.path.startswith("/api/"):
            self._send(404, "application/json; charset=utf-8", _error_body("unknown endpoint"))
        else:
            self._send_asset(url.path)


def create_server(config: ServerConfig) -> ResultsServer:
    """Load and validate the results, then bind the listening socket."""
    results = read_results(config.results_path)
    return ResultsServer(config, results)


def serve(config: ServerConfig) -> None:
    """Run the server until interrupted; prints the bound address first."""
    server = create_server(config)
    print(f"serving results on http://{config.bind_address}:{server.port}/", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
