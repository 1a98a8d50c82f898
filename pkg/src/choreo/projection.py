"""Endpoint projection: a choreography seen from one location.

``epp`` reinterprets each choreography effect as the network program that a
single location must run:

* a local step runs only at its own location; elsewhere it yields ``Absent``;
* a communication is a send at the sender, a receive at the receiver and
  nothing anywhere else (sender == receiver is a plain local copy);
* a conditional broadcasts the scrutinee from the decider, every other
  location receives it, and all of them continue with the same branch.
"""

from __future__ import annotations

from typing import Any, Collection

from . import codec
from .choreography import Choreo, CommEff, CondEff, LocalContext, LocalEff, _peek, run_local
from .errors import ConfigurationError
from .freer import bind, pure, then, translate
from .located import Absent, Location, Present, check_location
from .network import Backend, NetworkProgram, TraceEvent, broadcast, recv, run, send


def epp(c: Choreo, location: Location, known: Collection[Location] | None = None) -> NetworkProgram:
    """Project ``c`` to the network program for ``location``.

    Projection is incremental: a branch of a conditional is only projected
    once the scrutinee is known. If ``known`` is given, any effect naming a
    location outside it raises ``ConfigurationError`` before it is run.
    """
    check_location(location)

    def require(*locs: Location) -> None:
        if known is not None:
            for loc in locs:
                if loc not in known:
                    raise ConfigurationError(f"choreography mentions unconfigured location `{loc}`")

    def handler(eff: Any) -> NetworkProgram:
        if isinstance(eff, LocalEff):
            require(eff.at)
            if eff.at == location:
                return run(lambda ctx: Present(run_local(location, eff.comp, ctx), location))
            return pure(Absent(eff.at))

        if isinstance(eff, CommEff):
            s, r = eff.sender, eff.receiver
            require(s, r)
            if s == r == location:
                return pure(Present(_peek(eff.payload, location, "comm"), location))
            if s == location:
                data = codec.encode(_peek(eff.payload, location, "comm"))
                return then(send(data, r), lambda: pure(Absent(r)))
            if r == location:
                return bind(recv(s), lambda data: pure(Present(codec.decode(data), location)))
            return pure(Absent(r))

        if isinstance(eff, CondEff):
            decider = eff.decider
            require(decider)
            if decider == location:
                value = _peek(eff.scrutinee, location, "cond")
                return then(broadcast(codec.encode(value)), lambda: epp(eff.branches(value), location, known))
            return bind(
                recv(decider, choice=True),
                lambda data: epp(eff.branches(codec.decode(data)), location, known),
            )

        raise TypeError(f"not a choreography effect: {eff!r}")

    return translate(handler, c)


def run_choreography(
    config: Backend,
    c: Choreo,
    location: Location,
    *,
    context: LocalContext | None = None,
    trace: list[TraceEvent] | None = None,
) -> Any:
    """Project ``c`` to ``location`` and run it on ``config``'s transport."""
    config.check(location)
    program = epp(c, location, known=config.locations)
    return config.run_network(location, program, context=context, trace=trace)
