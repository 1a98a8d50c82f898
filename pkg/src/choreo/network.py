"""Per-location network programs and the backend interface that runs them.

A network program is an effect program over ``RunEff`` (local work),
``SendEff``, ``RecvEff`` and ``BroadcastEff``. Payloads are already
encoded bytes; messages between an ordered pair of locations arrive in the
order they were sent, and carry nothing besides the payload.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, ContextManager, Iterable, Mapping, Protocol

from .choreography import LocalContext
from .codec import Encoded
from .errors import ConfigurationError
from .freer import EffectProgram, interpret, perform
from .located import Location, check_location

NetworkProgram = EffectProgram


@dataclass(frozen=True)
class RunEff:
    comp: Callable[[LocalContext], Any]


@dataclass(frozen=True)
class SendEff:
    payload: Encoded
    to: Location
    choice: bool = False


@dataclass(frozen=True)
class RecvEff:
    source: Location
    choice: bool = False


@dataclass(frozen=True)
class BroadcastEff:
    payload: Encoded
    choice: bool = True


def run(comp: Callable[[LocalContext], Any]) -> NetworkProgram:
    return perform(RunEff(comp))


def send(payload: Encoded, to: Location, *, choice: bool = False) -> NetworkProgram:
    return perform(SendEff(payload, to, choice))


def recv(source: Location, *, choice: bool = False) -> NetworkProgram:
    return perform(RecvEff(source, choice))


def broadcast(payload: Encoded) -> NetworkProgram:
    return perform(BroadcastEff(payload))


@dataclass(frozen=True)
class TraceEvent:
    """One message as seen by the location that sent or received it."""

    kind: str  # "send" | "recv"
    peer: Location
    payload: Encoded
    choice: bool = False


class Endpoint(Protocol):
    def send(self, to: Location, payload: Encoded) -> None: ...

    def recv(self, source: Location) -> Encoded: ...


class Backend(ABC):
    """Maps locations to transport addresses and runs network programs."""

    kind: str = "abstract"

    def __init__(self, locations: Mapping[Location, Any]) -> None:
        self._locations = dict(locations)

    @property
    def locations(self) -> tuple[Location, ...]:
        return tuple(self._locations)

    def address(self, location: Location) -> Any:
        return self._locations[location]

    def check(self, *locations: Location) -> None:
        for loc in locations:
            if loc not in self._locations:
                raise ConfigurationError(f"location `{loc}` is not configured for the {self.kind} backend")

    @abstractmethod
    def endpoint(self, location: Location) -> ContextManager[Endpoint]:
        """Open the transport for ``location`` for the duration of one program run."""

    def run_network(
        self,
        location: Location,
        program: NetworkProgram,
        *,
        context: LocalContext | None = None,
        trace: list[TraceEvent] | None = None,
    ) -> Any:
        self.check(location)
        ctx = context or LocalContext(location)
        peers = [loc for loc in self.locations if loc != location]
        log = trace.append if trace is not None else (lambda _e: None)

        with self.endpoint(location) as ep:

            def handler(eff: Any) -> Any:
                if isinstance(eff, RunEff):
                    return eff.comp(ctx)
                if isinstance(eff, SendEff):
                    self.check(eff.to)
                    ep.send(eff.to, eff.payload)
                    log(TraceEvent("send", eff.to, eff.payload, eff.choice))
                    return None
                if isinstance(eff, RecvEff):
                    self.check(eff.source)
                    data = ep.recv(eff.source)
                    log(TraceEvent("recv", eff.source, data, eff.choice))
                    return data
                if isinstance(eff, BroadcastEff):
                    for peer in peers:
                        ep.send(peer, eff.payload)
                        log(TraceEvent("send", peer, eff.payload, eff.choice))
                    return None
                raise TypeError(f"not a network effect: {eff!r}")

            return interpret(handler, program)


def run_network(
    config: Backend,
    location: Location,
    program: NetworkProgram,
    **kwargs: Any,
) -> Any:
    return config.run_network(location, program, **kwargs)


def unique_locations(names: Iterable[Location]) -> list[Location]:
    names = list(names)
    if not names:
        raise ConfigurationError("at least one location is required")
    seen: set[Location] = set()
    for n in names:
        check_location(n)
        if n in seen:
            raise ConfigurationError(f"duplicate location `{n}`")
        seen.add(n)
    return names

