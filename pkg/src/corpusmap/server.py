"""Static HTTP server for exported bundles (read-only, no dynamic routes)."""

from __future__ import annotations

import functools
from http.server import SimpleHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .errors import InputError


class _BundleHandler(SimpleHTTPRequestHandler):
    def log_message(self, format: str, *args) -> None:  # quiet by default
        pass

    def do_POST(self) -> None:
        self.send_error(405, "read-only server")


def make_server(directory: str | Path, port: int) -> ThreadingHTTPServer:
    """Bind the server without starting it; raises on a busy port."""
    directory = Path(directory)
    if not directory.is_dir():
        raise InputError(f"bundle directory not found: {directory}")
    handler = functools.partial(_BundleHandler, directory=str(directory))
    try:
        return ThreadingHTTPServer(("127.0.0.1", port), handler)
    except OSError as exc:
        raise InputError(f"cannot bind port {port}: {exc}") from exc


def serve_bundle(directory: str | Path, port: int) -> None:
    """Serve the exported bundle until interrupted."""
    server = make_server(directory, port)
    try:
        server.serve_forever()
    finally:
        server.server_close()
