"""Shared test utilities."""

from __future__ import annotations

import io
import socket
from collections import deque

from choreo.choreography import LocalContext
from choreo.freer import interpret
from choreo.network import BroadcastEff, RecvEff, RunEff, SendEff


def dry_run(program, location="here", inbox=None):
    """Interpret a network program against scripted incoming messages.

    ``inbox`` maps a source location to the payloads it will deliver, in
    order. Returns ``(result, effects)`` where effects lists every network
    effect performed (``RunEff`` included).
    """
    queues = {src: deque(msgs) for src, msgs in (inbox or {}).items()}
    effects = []
    ctx = LocalContext(location, io.StringIO(), io.StringIO())

    def handler(eff):
        effects.append(eff)
        if isinstance(eff, RunEff):
            return eff.comp(ctx)
        if isinstance(eff, (SendEff, BroadcastEff)):
            return None
        if isinstance(eff, RecvEff):
            return queues[eff.source].popleft()
        raise AssertionError(eff)

    return interpret(handler, program), effects


def comm_effects(effects):
    return [e for e in effects if not isinstance(e, RunEff)]


def free_ports(n):
    socks = []
    try:
        for _ in range(n):
            s = socket.socket()
            s.bind(("127.0.0.1", 0))
            socks.append(s)
        return [s.getsockname()[1] for s in socks]
    finally:
        for s in socks:
            s.close()
