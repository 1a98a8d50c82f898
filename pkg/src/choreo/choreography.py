"""The global choreography language and its direct, single-threaded semantics.

A choreography is an effect program over three effects:

* ``LocalEff``  run a local computation at one location,
* ``CommEff``   move a located value from a sender to a receiver,
* ``CondEff``   branch on a value at one location, with every other
  location learning the outcome.

``run_choreo`` executes a choreography in the current thread, ignoring
placement. It is the reference that projected runs are checked against.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, TextIO

from .errors import OwnershipError
from .freer import EffectProgram, Perform, bind, force, perform, resume
from .located import Absent, Located, Location, Present, _grant, check_location, wrap

Choreo = EffectProgram


@dataclass
class LocalContext:
    """Host resources a location's local computations may use."""

    location: Location
    stdin: TextIO = field(default_factory=lambda: sys.stdin)
    stdout: TextIO = field(default_factory=lambda: sys.stdout)
    stderr: TextIO = field(default_factory=lambda: sys.stderr)

    def print(self, *args: Any) -> None:
        print(*args, file=self.stdout, flush=True)

    def readline(self) -> str:
        return self.stdin.readline()


LocalComputation = Callable[[Any, LocalContext], Any]


@dataclass(frozen=True)
class LocalEff:
    at: Location
    comp: LocalComputation


@dataclass(frozen=True)
class CommEff:
    sender: Location
    payload: Located
    receiver: Location


@dataclass(frozen=True)
class CondEff:
    decider: Location
    scrutinee: Located
    branches: Callable[[Any], Choreo]


def _check_owner(v: Any, expected: Location, operation: str) -> None:
    if not isinstance(v, (Present, Absent)):
        raise TypeError(f"{operation} needs a located value, got {type(v).__name__}")
    if v.owner != expected:
        raise OwnershipError(expected, v.owner, operation)


def locally(at: Location, comp: LocalComputation) -> Choreo:
    """Run ``comp(un, ctx)`` at ``at``; the result is located there."""
    return perform(LocalEff(check_location(at), comp))


def comm(sender: Location, payload: Located, receiver: Location) -> Choreo:
    """Send ``payload`` from ``sender`` to ``receiver``; the result is located at the receiver."""
    check_location(sender)
    check_location(receiver)
    _check_owner(payload, sender, f"comm {sender} -> {receiver}")
    return perform(CommEff(sender, payload, receiver))


def comm_locally(sender: Location, comp: LocalComputation, receiver: Location) -> Choreo:
    """``locally`` at the sender followed by ``comm`` of its result."""
    return bind(locally(sender, comp), lambda x: comm(sender, x, receiver))


def cond(decider: Location, scrutinee: Located, branches: Callable[[Any], Choreo]) -> Choreo:
    """Continue with ``branches(value)`` where ``value`` is the scrutinee at ``decider``.

    Every location takes the same branch: the decider tells all the others.
    """
    check_location(decider)
    _check_owner(scrutinee, decider, f"cond at {decider}")
    return perform(CondEff(decider, scrutinee, branches))


def run_local(at: Location, comp: LocalComputation, ctx: LocalContext) -> Any:
    """Execute one local computation with a capability scoped to its call."""
    un = _grant(at)
    try:
        return comp(un, ctx)
    finally:
        un.revoke()


def _peek(v: Located, at: Location, operation: str) -> Any:
    un = _grant(at)
    try:
        return un.read(v, operation)
    finally:
        un.revoke()


def run_choreo(
    c: Choreo,
    contexts: Mapping[Location, LocalContext] | None = None,
    *,
    stdin: TextIO | None = None,
    stdout: TextIO | None = None,
) -> Any:
    """Run a choreography directly, in one thread, in program order.

    Local computations get a per-location ``LocalContext``; those not given
    in ``contexts`` are created on first use with ``stdin``/``stdout``.
    """
    ctxs: dict[Location, LocalContext] = dict(contexts or {})

    def context(at: Location) -> LocalContext:
        if at not in ctxs:
            ctxs[at] = LocalContext(at, stdin or sys.stdin, stdout or sys.stdout)
        return ctxs[at]

    program = force(c)
    while isinstance(program, Perform):
        eff = program.effect
        if isinstance(eff, LocalEff):
            result = wrap(run_local(eff.at, eff.comp, context(eff.at)), eff.at)
        elif isinstance(eff, CommEff):
            result = wrap(_peek(eff.payload, eff.sender, "comm"), eff.receiver)
        elif isinstance(eff, CondEff):
            # splice the chosen branch in front of the rest of the program
            value = _peek(eff.scrutinee, eff.decider, "cond")
            program = force(bind(eff.branches(value), program.continuation))
            continue
        else:
            raise TypeError(f"not a choreography effect: {eff!r}")
        program = resume(program.continuation, result)
    return program.value
