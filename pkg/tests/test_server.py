"""HTTP endpoints: results JSON, table exports, static assets, caching."""

import json
import threading
import urllib.error
import urllib.request

import pytest

from podium.errors import EnvironmentFailure
from podium.results import export_table, results_to_json, write_results
from podium.server import ServerConfig, create_server

from conftest import BLEU_ORDER, benchmark_results


@pytest.fixture(scope="module")
def live_server(tmp_path_factory):
    results = benchmark_results()
    path = tmp_path_factory.mktemp("server") / "results.json"
    write_results(results, path)
    server = create_server(ServerConfig(results_path=path, port=0))
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield server, results
    server.shutdown()
    server.server_close()
    thread.join(timeout=5)


def fetch(server, path, headers=None):
    request = urllib.request.Request(
        f"http://127.0.0.1:{server.port}{path}", headers=headers or {}
    )
    try:
        with urllib.request.urlopen(request, timeout=10) as response:
            return response.status, dict(response.headers), response.read()
    except urllib.error.HTTPError as error:
        return error.code, dict(error.headers), error.read()


class TestApiResults:
    def test_full_document(self, live_server):
        server, results = live_server
        status, headers, body = fetch(server, "/api/results")
        assert status == 200
        assert headers["Content-Type"] == "application/json; charset=utf-8"
        assert body == results_to_json(results)
        payload = json.loads(body)
        names = [s["name"] for s in payload["systems"]]
        assert "Seed-x7b" in names
        assert len(names) == 8

    def test_content_length_matches(self, live_server):
        server, _ = live_server
        status, headers, body = fetch(server, "/api/results")
        assert status == 200
        assert int(headers["Content-Length"]) == len(body)

    def test_etag_and_304(self, live_server):
        server, _ = live_server
        _, headers, _ = fetch(server, "/api/results")
        etag = headers["ETag"]
        status, revalidated, body = fetch(server, "/api/results", {"If-None-Match": etag})
        assert status == 304
        assert body == b""
        assert revalidated["ETag"] == etag

    def test_cache_control(self, live_server):
        server, _ = live_server
        _, headers, _ = fetch(server, "/api/results")
        assert headers["Cache-Control"] == "public, max-age=0, must-revalidate"


class TestApiExport:
    def test_each_format_matches_library_export(self, live_server):
        server, results = live_server
        for fmt in ("csv", "latex", "json", "html"):
            status, headers, body = fetch(server, f"/api/export?format={fmt}")
            assert status == 200
            assert body == export_table(results, fmt)

    def test_content_types(self, live_server):
        server, _ = live_server
        _, headers, _ = fetch(server, "/api/export?format=csv")
        assert headers["Content-Type"] == "text/csv; charset=utf-8"
        _, headers, _ = fetch(server, "/api/export?format=latex")
        assert headers["Content-Type"] == "application/x-latex"

    def test_csv_row_order(self, live_server):
        server, _ = live_server
        _, _, body = fetch(server, "/api/export?format=csv")
        lines = body.decode().splitlines()
        assert [line.split(",")[0] for line in lines[1:]] == list(BLEU_ORDER)

    def test_unknown_format_is_400(self, live_server):
        server, _ = live_server
        status, headers, body = fetch(server, "/api/export?format=pdf")
        assert status == 400
        assert headers["Content-Type"].startswith("application/json")
        message = json.loads(body)["error"]
        assert "pdf" in message
        for fmt in ("csv", "latex", "json", "html"):
            assert fmt in message

    def test_missing_format_is_400(self, live_server):
        server, _ = live_server
        status, _, body = fetch(server, "/api/export")
        assert status == 400
        assert "missing" in json.loads(body)["error"]

    def test_unknown_api_path_is_404(self, live_server):
        server, _ = live_server
        status, _, _ = fetch(server, "/api/unknown")
        assert status == 404


class TestStaticAssets:
    def test_root_serves_index(self, live_server):
        server, _ = live_server
        status, headers, body = fetch(server, "/")
        assert status == 200
        assert headers["Content-Type"] == "text/html; charset=utf-8"
        assert b"<!DOCTYPE html>" in body or b"<!doctype html>" in body

    def test_index_named_explicitly(self, live_server):
        server, _ = live_server
        _, _, root_body = fetch(server, "/")
        status, _, body = fetch(server, "/index.html")
        assert status == 200
        assert body == root_body

    def test_missing_asset_is_404(self, live_server):
        server, _ = live_server
        status, _, _ = fetch(server, "/no-such-file.js")
        assert status == 404

    def test_path_traversal_rejected(self, live_server):
        server, _ = live_server
        status, _, _ = fetch(server, "/../pyproject.toml")
        assert status == 404
        status, _, _ = fetch(server, "/..%2f..%2fetc%2fpasswd")
        assert status == 404

    def test_dot_files_hidden(self, live_server):
        server, _ = live_server
        status, _, _ = fetch(server, "/.hidden")
        assert status == 404


class TestLifecycle:
    def test_port_zero_binds_ephemeral(self, live_server):
        server, _ = live_server
        assert server.port > 0

    def test_busy_port_raises_environment_failure(self, live_server, tmp_path):
        server, results = live_server
        path = tmp_path / "results.json"
        write_results(results, path)
        with pytest.raises(EnvironmentFailure, match=str(server.port)):
            create_server(ServerConfig(results_path=path, port=server.port))

    def test_missing_results_file_raises_before_binding(self, tmp_path):
        from podium.errors import ResultsError

        with pytest.raises(ResultsError):
            create_server(ServerConfig(results_path=tmp_path / "absent.json", port=0))
