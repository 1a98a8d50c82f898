"""HTTP transport: one listener per location, one inbox queue per sender.

Wire protocol, one endpoint::

    POST /msg/{sender}            sender location, percent-encoded
    Content-Type: application/octet-stream
    <body: canonical encoding of the payload>

    -> 200 with an empty body once the message is in the receiver's inbox
       for ``sender``; 400 if the path or sender is not recognised.

A location sends to one peer at a time and waits for the 200 before its
next send, so per-sender FIFO order holds end to end. Only connection
establishment is retried; once a request has been written it is never
resent, so no message is enqueued twice.
"""

from __future__ import annotations

import contextlib
import http.client
import logging
import queue
import threading
import time
import urllib.parse
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Iterable, Iterator

from ..codec import Encoded
from ..errors import ConfigurationError, TransportError
from ..located import Location
from ..network import Backend, unique_locations

log = logging.getLogger(__name__)

MESSAGE_PREFIX = "/msg/"
CONTENT_TYPE = "application/octet-stream"


@dataclass(frozen=True)
class RetryPolicy:
    attempts: int = 30
    backoff: float = 0.1  # seconds between connection attempts
    timeout: float = 10.0  # per-request socket timeout once connected


class HttpConfig(Backend):
    kind = "http"

    def __init__(self, entries: Iterable[tuple[Location, str, int]], retry: RetryPolicy = RetryPolicy()) -> None:
        entries = list(entries)
        unique_locations(name for name, _, _ in entries)
        addresses: dict[Location, tuple[str, int]] = {}
        for name, host, port in entries:
            if not isinstance(host, str) or not host:
                raise ConfigurationError(f"location `{name}`: host must be a non-empty string")
            if isinstance(port, bool) or not isinstance(port, int) or not 1 <= port <= 65535:
                raise ConfigurationError(f"location `{name}`: port must be an integer in 1..65535, got {port!r}")
            if (host, port) in addresses.values():
                raise ConfigurationError(f"location `{name}`: address {host}:{port} is already in use by another location")
            addresses[name] = (host, port)
        super().__init__(addresses)
        self.retry = retry

    @contextlib.contextmanager
    def endpoint(self, location: Location) -> Iterator[_HttpEndpoint]:
        self.check(location)
        ep = _HttpEndpoint(self, location)
        ep.start()
        try:
            yield ep
        finally:
            ep.stop()


def make_http_config(entries: Iterable[tuple[Location, str, int]], retry: RetryPolicy = RetryPolicy()) -> HttpConfig:
    return HttpConfig(entries, retry)


def parse_config(text: str) -> HttpConfig:
    """Parse ``<location> <host> <port>`` lines; ``#`` starts a comment."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ConfigurationError(f"line {lineno}: expected `<location> <host> <port>`, got {raw!r}")
        name, host, port = parts
        try:
            port_num = int(port)
        except ValueError:
            raise ConfigurationError(f"line {lineno}: port {port!r} is not an integer") from None
        entries.append((name, host, port_num))
    return HttpConfig(entries)


def load_config(path: str | Path) -> HttpConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from exc
    return parse_config(text)


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server: _Server

    def do_POST(self) -> None:
        inboxes = self.server.inboxes
        sender = None
        if self.path.startswith(MESSAGE_PREFIX):
            try:
                sender = urllib.parse.unquote(self.path[len(MESSAGE_PREFIX):], errors="strict")
            except UnicodeDecodeError:
                sender = None
        length = self.headers.get("Content-Length")
        if sender not in inboxes or length is None or not length.isdigit():
            self.close_connection = True
            self._reply(400)
            return
        body = self.rfile.read(int(length))
        inboxes[sender].put(body)
        self._reply(200)

    def _reply(self, status: int) -> None:
        self.send_response(status)
        self.send_header("Content-Length", "0")
        self.end_headers()

    def log_message(self, format: str, *args) -> None:
        log.debug("%s: " + format, self.server.location, *args)


class _Server(ThreadingHTTPServer):
    daemon_threads = True
    allow_reuse_address = True

    def __init__(self, address: tuple[str, int], location: Location, peers: Iterable[Location]) -> None:
        self.location = location
        self.inboxes: dict[Location, queue.Queue[Encoded]] = {p: queue.Queue() for p in peers}
        super().__init__(address, _Handler)


class _HttpEndpoint:
    def __init__(self, config: HttpConfig, location: Location) -> None:
        self.config = config
        self.location = location
        self._server: _Server | None = None
        self._thread: threading.Thread | None = None

    def start(self) -> None:
        host, port = self.config.address(self.location)
        try:
            self._server = _Server((host, port), self.location, self.config.locations)
        except OSError as exc:
            raise TransportError(f"`{self.location}` cannot listen on {host}:{port}: {exc}") from exc
        self._thread = threading.Thread(
            target=self._server.serve_forever, kwargs={"poll_interval": 0.05},
            name=f"http-{self.location}", daemon=True,
        )
        self._thread.start()

    def stop(self) -> None:
        if self._server is not None:
            self._server.shutdown()
            self._server.server_close()
            self._server = None

    def recv(self, source: Location) -> Encoded:
        assert self._server is not None
        return self._server.inboxes[source].get()

    def send(self, to: Location, payload: Encoded) -> None:
        host, port = self.config.address(to)
        retry = self.config.retry
        path = MESSAGE_PREFIX + urllib.parse.quote(self.location, safe="")
        conn = None
        for attempt in range(1, retry.attempts + 1):
            conn = http.client.HTTPConnection(host, port, timeout=retry.timeout)
            try:
                conn.connect()
                break
            except OSError as exc:
                conn.close()
                conn = None
                log.debug("%s -> %s: connect attempt %d failed: %s", self.location, to, attempt, exc)
                if attempt < retry.attempts:
                    time.sleep(retry.backoff)
        if conn is None:
            raise TransportError(
                f"`{self.location}` could not reach `{to}` at {host}:{port} after {retry.attempts} attempts"
            )
        try:
            conn.request("POST", path, body=payload, headers={"Content-Type": CONTENT_TYPE})
            resp = conn.getresponse()
            resp.read()
        except (OSError, http.client.HTTPException) as exc:
            raise TransportError(f"`{self.location}` -> `{to}`: request failed: {exc}") from exc
        finally:
            conn.close()
        if resp.status != 200:
            raise TransportError(f"`{self.location}` -> `{to}`: peer answered {resp.status} {resp.reason}")


def run_network_http(config: HttpConfig, location: Location, program, **kwargs):
    return config.run_network(location, program, **kwargs)
