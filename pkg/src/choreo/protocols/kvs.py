"""A replicated in-memory key-value store.

The client sends a request to the primary, a replication strategy decides
how the request reaches the replicas, and the primary answers the client.
Strategies are ordinary functions from a primary-located request and the
replica states to a choreography producing the primary-located response.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Callable, Optional, Union

from ..choreography import Choreo, LocalContext, comm, comm_locally, cond, locally
from ..codec import wire_type
from ..errors import ConfigurationError
from ..freer import do, pure
from ..located import Located, Location
from .show import show_maybe

CLIENT = "client"
SERVER = "server"
PRIMARY = "primary"
BACKUP = "backup"
BACKUP1 = "backup1"
BACKUP2 = "backup2"


@wire_type
@dataclass(frozen=True)
class Put:
    key: str
    value: str


@wire_type
@dataclass(frozen=True)
class Get:
    key: str


Request = Union[Put, Get]
Response = Optional[str]
StoreState = dict  # str -> str, only ever touched at its own location

Strategy = Callable[[Located, Any], Choreo]


def handle_request(request: Request, state: StoreState) -> Response:
    if isinstance(request, Put):
        state[request.key] = request.value
        return request.value
    if isinstance(request, Get):
        return state.get(request.key)
    raise TypeError(f"not a request: {request!r}")


def new_store(un, ctx) -> StoreState:
    return {}


@do
def kvs_client_server(request: Located, state: Located, server: Location = SERVER):
    """One request against a single unreplicated server."""
    request_s = yield comm(CLIENT, request, server)
    response = yield locally(server, lambda un, ctx: handle_request(un(request_s), un(state)))
    return (yield comm(server, response, CLIENT))


@do
def kvs(request: Located, states: Any, strategy: Strategy):
    """One request, with replication delegated to ``strategy``."""
    request_p = yield comm(CLIENT, request, PRIMARY)
    response = yield strategy(request_p, states)
    return (yield comm(PRIMARY, response, CLIENT))


def null_strategy(request: Located, primary_st: Located) -> Choreo:
    return locally(PRIMARY, lambda un, ctx: handle_request(un(request), un(primary_st)))


@do
def _forward(loc_a: Location, loc_b: Location, request: Located, state: Located):
    request_b = yield comm(loc_a, request, loc_b)
    yield comm_locally(loc_b, lambda un, ctx: handle_request(un(request_b), un(state)), loc_a)
    return None


@do
def primary_backup(request: Located, states: tuple[Located, Located]):
    """Puts are applied at the backup, and acknowledged, before the primary."""
    primary_st, backup_st = states

    def branch(req: Request) -> Choreo:
        if isinstance(req, Put):
            return _forward(PRIMARY, BACKUP, request, backup_st)
        return pure(None)

    yield cond(PRIMARY, request, branch)
    return (yield locally(PRIMARY, lambda un, ctx: handle_request(un(request), un(primary_st))))


def do_backup(loc_a: Location, loc_b: Location, request: Located, state: Located) -> Choreo:
    """If the request at ``loc_a`` is a Put, apply it at ``loc_b`` and acknowledge."""
    if loc_a == loc_b:
        raise ConfigurationError("do_backup needs two distinct locations")

    def branch(req: Request) -> Choreo:
        if isinstance(req, Put):
            return _forward(loc_a, loc_b, request, state)
        return pure(None)

    return cond(loc_a, request, branch)


@do
def primary_backup_via_do_backup(request: Located, states: tuple[Located, Located]):
    primary_st, backup_st = states
    yield do_backup(PRIMARY, BACKUP, request, backup_st)
    return (yield locally(PRIMARY, lambda un, ctx: handle_request(un(request), un(primary_st))))


@do
def double_backup(request: Located, states: tuple[Located, Located, Located]):
    primary_st, backup1_st, backup2_st = states
    yield do_backup(PRIMARY, BACKUP1, request, backup1_st)
    yield do_backup(PRIMARY, BACKUP2, request, backup2_st)
    return (yield locally(PRIMARY, lambda un, ctx: handle_request(un(request), un(primary_st))))


@dataclass(frozen=True)
class Deployment:
    strategy: Strategy
    replicas: tuple[Location, ...]  # primary first

    @property
    def locations(self) -> tuple[Location, ...]:
        return (CLIENT, *self.replicas)


DEPLOYMENTS = {
    "null": Deployment(null_strategy, (PRIMARY,)),
    "primary-backup": Deployment(primary_backup, (PRIMARY, BACKUP)),
    "double-backup": Deployment(double_backup, (PRIMARY, BACKUP1, BACKUP2)),
}


@do
def init_states(replicas: tuple[Location, ...]):
    """An empty store at each replica; a bare located store if there is only one."""
    stores = []
    for loc in replicas:
        stores.append((yield locally(loc, new_store)))
    return stores[0] if len(stores) == 1 else tuple(stores)


_COMMAND = re.compile(r"^\s*(GET|PUT)\s+(\S+)(?:\s+(.*?))?\s*$")


def parse_request(line: str) -> Request:
    """``GET <key>`` or ``PUT <key> <value>``; the value runs to end of line."""
    m = _COMMAND.match(line)
    if not m:
        raise ValueError(f"expected `GET <key>` or `PUT <key> <value>`, got {line.strip()!r}")
    verb, key, value = m.groups()
    if verb == "GET":
        if value:
            raise ValueError("GET takes exactly one key")
        return Get(key)
    if value is None:
        raise ValueError("PUT needs a key and a value")
    return Put(key, value)


def read_request(ctx: LocalContext) -> Request | None:
    """Next request from the terminal; ``None`` on end of input or ``QUIT``."""
    while True:
        line = ctx.readline()
        if not line or line.strip() == "QUIT":
            return None
        if not line.strip():
            continue
        try:
            return parse_request(line)
        except ValueError as exc:
            print(f"error: {exc}", file=ctx.stderr, flush=True)


def show_response(response: Response) -> str:
    return "> " + show_maybe(response)


@do
def kv_service(deployment: Deployment, read: Callable[[LocalContext], Request | None] = read_request):
    """Serve client requests until the client runs out of input.

    Returns the replica states so a run can be inspected afterwards.
    """
    states = yield init_states(deployment.replicas)
    while True:
        request = yield locally(CLIENT, lambda un, ctx: read(ctx))
        active = yield locally(CLIENT, lambda un, ctx: un(request) is not None)

        @do
        def serve():
            response = yield kvs(request, states, deployment.strategy)
            yield locally(CLIENT, lambda un, ctx: ctx.print(show_response(un(response))))
            return True

        more = yield cond(CLIENT, active, lambda a: serve() if a else pure(False))
        if not more:
            return states


def scripted(requests: list[Request]) -> Callable[[LocalContext], Request | None]:
    """A ``read`` function replaying ``requests`` (for tests and demos)."""
    it = iter(requests)

    def read(ctx: LocalContext) -> Request | None:
        return next(it, None)

    return read

