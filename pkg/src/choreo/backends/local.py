"""In-process transport: every location is a thread, every ordered pair a FIFO.

Optionally each message is held back for a random delay before the
receiver can see it. Delays are drawn from one RNG per ordered pair, seeded
from the fabric seed and the pair, so a given seed reproduces the same
delays whatever the thread interleaving. A message never becomes visible
before an earlier one on the same pair, so delays only reorder traffic
between different pairs.
"""

from __future__ import annotations

import contextlib
import random
import threading
import time
from collections import deque
from typing import Any, Iterable, Iterator, Mapping

from ..choreography import Choreo, LocalContext
from ..codec import Encoded
from ..errors import EndpointFailure, TransportError
from ..located import Location
from ..network import Backend, TraceEvent, unique_locations
from ..projection import run_choreography


class _Mailbox:
    def __init__(self) -> None:
        self._items: deque[tuple[float, Encoded]] = deque()
        self._cv = threading.Condition()
        self._last_visible = 0.0

    def put(self, payload: Encoded, delay: float) -> None:
        with self._cv:
            visible = max(self._last_visible, time.monotonic() + delay)
            self._last_visible = visible
            self._items.append((visible, payload))
            self._cv.notify_all()

    def get(self, closed: threading.Event) -> Encoded:
        with self._cv:
            while True:
                if closed.is_set():
                    raise TransportError("local fabric was shut down while waiting for a message")
                timeout = None
                if self._items:
                    wait = self._items[0][0] - time.monotonic()
                    if wait <= 0:
                        return self._items.popleft()[1]
                    timeout = wait
                self._cv.wait(timeout)

    def wake(self) -> None:
        with self._cv:
            self._cv.notify_all()

    def __len__(self) -> int:
        with self._cv:
            return len(self._items)


class _FabricEndpoint:
    def __init__(self, fabric: LocalFabric, location: Location) -> None:
        self.fabric = fabric
        self.location = location

    def send(self, to: Location, payload: Encoded) -> None:
        self.fabric._deliver(self.location, to, payload)

    def recv(self, source: Location) -> Encoded:
        payload = self.fabric.mailbox(source, self.location).get(self.fabric._closed)
        with self.fabric._log_lock:
            self.fabric.deliveries[self.location].append((source, payload))
        return payload


class LocalFabric(Backend):
    """A simulated network among ``locations`` inside one process.

    ``max_delay_ms`` > 0 turns on uniformly random delivery delays in
    ``[0, max_delay_ms]`` drawn with ``seed``.
    """

    kind = "local"

    def __init__(self, locations: Iterable[Location], max_delay_ms: float = 0.0, seed: int = 0) -> None:
        names = unique_locations(locations)
        super().__init__({name: name for name in names})
        if max_delay_ms < 0:
            raise ValueError("max_delay_ms must be non-negative")
        self.max_delay_ms = max_delay_ms
        self.seed = seed
        self._mailboxes = {(s, r): _Mailbox() for s in names for r in names}
        self._rngs = {(s, r): random.Random(f"{seed}/{s}/{r}") for s in names for r in names}
        self._closed = threading.Event()
        self._log_lock = threading.Lock()
        self.delays: dict[tuple[Location, Location], list[float]] = {pair: [] for pair in self._mailboxes}
        self.deliveries: dict[Location, list[tuple[Location, Encoded]]] = {n: [] for n in names}
        self.traces: dict[Location, list[TraceEvent]] = {n: [] for n in names}

    def mailbox(self, sender: Location, receiver: Location) -> _Mailbox:
        self.check(sender, receiver)
        return self._mailboxes[(sender, receiver)]

    def _deliver(self, sender: Location, receiver: Location, payload: Encoded) -> None:
        if self._closed.is_set():
            raise TransportError("local fabric was shut down")
        box = self.mailbox(sender, receiver)
        delay = 0.0
        if self.max_delay_ms > 0:
            # each pair's RNG is only ever used by the single sender thread
            delay = self._rngs[(sender, receiver)].uniform(0.0, self.max_delay_ms) / 1000.0
        self.delays[(sender, receiver)].append(delay)
        box.put(payload, delay)

    @contextlib.contextmanager
    def endpoint(self, location: Location) -> Iterator[_FabricEndpoint]:
        self.check(location)
        yield _FabricEndpoint(self, location)

    def close(self) -> None:
        """Abort every blocked receive."""
        self._closed.set()
        for box in self._mailboxes.values():
            box.wake()

    def pending(self) -> dict[tuple[Location, Location], int]:
        return {pair: len(box) for pair, box in self._mailboxes.items() if len(box)}

    def is_quiescent(self) -> bool:
        return not self.pending()


def make_local_fabric(locations: Iterable[Location], max_delay_ms: float = 0.0, seed: int = 0) -> LocalFabric:
    return LocalFabric(locations, max_delay_ms, seed)


def run_all(
    fabric: LocalFabric,
    c: Choreo,
    *,
    contexts: Mapping[Location, LocalContext] | None = None,
    timeout: float | None = None,
) -> dict[Location, Any]:
    """Run the projection of ``c`` at every fabric location concurrently.

    Returns each location's result. If any location fails the fabric is shut
    down and ``EndpointFailure`` names it; if ``timeout`` seconds pass first,
    ``TimeoutError`` lists the locations still running.
    """
    contexts = dict(contexts or {})
    results: dict[Location, Any] = {}
    failures: list[tuple[Location, BaseException]] = []
    done = threading.Condition()
    finished: set[Location] = set()

    def worker(loc: Location) -> None:
        try:
            value = run_choreography(fabric, c, loc, context=contexts.get(loc), trace=fabric.traces[loc])
        except BaseException as exc:  # reported to the caller below
            with done:
                failures.append((loc, exc))
                finished.add(loc)
                done.notify_all()
            return
        with done:
            results[loc] = value
            finished.add(loc)
            done.notify_all()

    for loc in fabric.locations:
        fabric.traces[loc].clear()
    threads = [
        threading.Thread(target=worker, args=(loc,), name=f"choreo-{loc}", daemon=True)
        for loc in fabric.locations
    ]
    for t in threads:
        t.start()

    deadline = None if timeout is None else time.monotonic() + timeout
    with done:
        while len(finished) < len(threads) and not failures:
            remaining = None if deadline is None else deadline - time.monotonic()
            if remaining is not None and remaining <= 0:
                break
            done.wait(remaining)
        if failures:
            loc, exc = failures[0]
        elif len(finished) < len(threads):
            stuck = sorted(set(fabric.locations) - finished)
            loc = exc = None
        else:
            return {loc: results[loc] for loc in fabric.locations}

    fabric.close()
    if exc is not None:
        raise EndpointFailure(loc, exc) from exc
    raise TimeoutError(f"choreography did not finish within {timeout}s; still running: {', '.join(stuck)}")
