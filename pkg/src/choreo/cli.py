"""Command-line runner for the example protocols.

    choreo <example> <location> [--config FILE] [--backend local|http]

With ``--backend http`` (the default when ``--config`` is given) this process
plays one location and talks to the others over HTTP. With ``--backend
local`` every location runs in this process and the chosen location's
result is printed.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Callable

from .backends.http import load_config
from .backends.local import LocalFabric, run_all
from .choreography import Choreo
from .errors import ChoreoError, ConfigurationError, EndpointFailure
from .located import Location, Present
from .projection import run_choreography
from .protocols import bookseller as bs
from .protocols import kvs
from .protocols.show import show_maybe


@dataclass(frozen=True)
class Example:
    locations: Callable[[argparse.Namespace], tuple[Location, ...]]
    build: Callable[[argparse.Namespace], Choreo]
    prints_result: bool = True


def _kv(name: str) -> Example:
    deployment = kvs.DEPLOYMENTS[name]
    return Example(lambda a: deployment.locations, lambda a: kvs.kv_service(deployment), prints_result=False)


EXAMPLES: dict[str, Example] = {
    "bookseller": Example(
        lambda a: (bs.BUYER, bs.SELLER),
        lambda a: bs.bookseller(bs.decide_alone, a.title),
    ),
    "bookseller-ho": Example(
        lambda a: (bs.BUYER, bs.BUYER2, bs.SELLER),
        lambda a: bs.bookseller(bs.decide_with_friend, a.title),
    ),
    "bookseller-poly": Example(
        lambda a: (a.buyer, bs.SELLER),
        lambda a: bs.bookseller_polymorphic(a.buyer, a.title),
    ),
    "kvs-null": _kv("null"),
    "kvs-primary-backup": _kv("primary-backup"),
    "kvs-double-backup": _kv("double-backup"),
}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="choreo", description="Run an example choreography at one location.")
    p.add_argument("example", help=", ".join(EXAMPLES))
    p.add_argument("location")
    p.add_argument("--config", help="file with `<location> <host> <port>` lines")
    p.add_argument("--backend", choices=("local", "http"))
    p.add_argument("--title", default=bs.TAPL, help="book the buyer asks for")
    p.add_argument("--buyer", default=bs.BUYER, help="location playing the buyer in bookseller-poly")
    p.add_argument("--delay-ms", type=float, default=0.0, help="local backend: max random delivery delay")
    p.add_argument("--seed", type=int, default=0, help="local backend: delay RNG seed")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _fail(message: str, status: int = 2) -> int:
    print(message, file=sys.stderr)
    return status


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)

    example = EXAMPLES.get(args.example)
    if example is None:
        return _fail(f"Unknown example: {args.example} (choose from {', '.join(EXAMPLES)})")
    locations = example.locations(args)
    if args.location not in locations:
        return _fail(f"Unknown location: {args.location}")

    backend = args.backend or ("http" if args.config else "local")
    try:
        choreo = example.build(args)
        if backend == "http":
            if not args.config:
                return _fail("--backend http needs --config FILE")
            config = load_config(args.config)
            config.check(*locations)
        else:
            config = LocalFabric(locations, args.delay_ms, args.seed)
    except ConfigurationError as exc:
        return _fail(f"configuration error: {exc}")

    try:
        if backend == "http":
            result = run_choreography(config, choreo, args.location)
        else:
            result = run_all(config, choreo)[args.location]
    except EndpointFailure as exc:
        return _fail(f"error at `{exc.location}`: {exc.cause}", 1)
    except ChoreoError as exc:
        return _fail(f"error: {exc}", 1)
    except KeyboardInterrupt:
        return 130

    if example.prints_result and isinstance(result, Present):
        print(show_maybe(result.value), flush=True)
    return 0
