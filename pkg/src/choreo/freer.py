"""Effect programs: a chain of effect requests, each with a continuation.

A program is either ``Return(value)`` or ``Perform(effect, continuation)``.
Nothing here assigns meaning to effects; an interpreter supplies a handler.

``Suspend(thunk)`` defers building a program until an interpreter needs
it. ``force`` reduces any program to ``Return`` or ``Perform``, and every
interpreter only ever sees those two shapes.

Continuations are kept as a tree of compositions and are unrolled with an
explicit stack when resumed, so neither deeply left-nested ``bind`` chains
nor long effect sequences consume Python stack frames.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Any, Callable, Generic, TypeVar, Union

A = TypeVar("A")

Continuation = Callable[[Any], "EffectProgram"]


@dataclass(frozen=True)
class Return(Generic[A]):
    value: A


@dataclass(frozen=True)
class Perform:
    effect: Any
    continuation: Continuation


@dataclass(frozen=True)
class Suspend:
    thunk: Callable[[], "EffectProgram"]


EffectProgram = Union[Return, Perform, Suspend]


def force(program: EffectProgram) -> Return | Perform:
    while isinstance(program, Suspend):
        program = program.thunk()
    if not isinstance(program, (Return, Perform)):
        raise TypeError(f"expected an effect program, got {type(program).__name__}")
    return program


class _Then:
    """Kleisli composition ``first >=> second``, resolved lazily by ``resume``."""

    __slots__ = ("first", "second")

    def __init__(self, first: Continuation, second: Continuation) -> None:
        self.first = first
        self.second = second

    def __call__(self, value: Any) -> EffectProgram:
        return resume(self, value)


class _Pending:
    """A cons list of continuations still waiting to run, innermost first."""

    __slots__ = ("cell",)

    def __init__(self, cell: tuple) -> None:
        self.cell = cell

    def __call__(self, value: Any) -> EffectProgram:
        return resume(self, value)


def resume(continuation: Continuation, value: Any) -> Return | Perform:
    """Feed ``value`` to a (possibly composed) continuation.

    Returns the next program in head-normal form: either the final
    ``Return`` or the first ``Perform`` reached.
    """
    k = continuation
    stack = None  # cons cells (continuation, rest)
    while True:
        if isinstance(k, _Then):
            stack = (k.second, stack)
            k = k.first
            continue
        if isinstance(k, _Pending):
            head, tail = k.cell
            if tail is not None:
                stack = (_Pending(tail), stack)
            k = head
            continue
        program = force(k(value))
        if stack is None:
            return program
        if isinstance(program, Return):
            value = program.value
            k, stack = stack
            continue
        return Perform(program.effect, _Then(program.continuation, _Pending(stack)))


def pure(value: A) -> Return:
    return Return(value)


def perform(effect: Any) -> Perform:
    """Lift a single effect into a program whose result is the effect's result."""
    return Perform(effect, pure)


def bind(program: EffectProgram, k: Callable[[Any], EffectProgram]) -> EffectProgram:
    if isinstance(program, Return):
        return k(program.value)
    if isinstance(program, Suspend):
        return Suspend(lambda: bind(program.thunk(), k))
    return Perform(program.effect, _Then(program.continuation, k))


def then(program: EffectProgram, k: Callable[[], EffectProgram]) -> EffectProgram:
    """``bind`` that ignores the intermediate result."""
    return bind(program, lambda _: k())


def fmap(f: Callable[[Any], Any], program: EffectProgram) -> EffectProgram:
    return bind(program, lambda x: Return(f(x)))


def sequence(programs) -> EffectProgram:
    """Run programs left to right, collecting their results into a list."""
    programs = tuple(programs)

    def step(i: int, acc: tuple) -> EffectProgram:
        if i == len(programs):
            return Return(list(acc))
        return bind(programs[i], lambda x: step(i + 1, acc + (x,)))

    return step(0, ())


def delay(thunk: Callable[[], EffectProgram]) -> Suspend:
    return Suspend(thunk)


def do(fn: Callable[..., Any]) -> Callable[..., EffectProgram]:
    """Write a program as a generator: ``x = yield program`` binds ``x``.

    The decorated function returns a program; the generator's ``return``
    value is the program's result. A fresh generator is started every time
    the program is interpreted, so the same program value can be run at
    many locations concurrently.
    """

    @functools.wraps(fn)
    def build(*args, **kwargs) -> EffectProgram:
        def start() -> EffectProgram:
            gen = fn(*args, **kwargs)

            def step(value: Any) -> EffectProgram:
                while True:
                    try:
                        program = force(gen.send(value))
                    except StopIteration as stop:
                        return Return(stop.value)
                    if isinstance(program, Return):
                        value = program.value
                        continue
                    return Perform(program.effect, _Then(program.continuation, step))

            return step(None)

        return Suspend(start)

    return build


def interpret(handler: Callable[[Any], Any], program: EffectProgram) -> Any:
    """Fold ``handler`` over ``program`` in the host's direct context.

    The handler receives each effect in program order and returns its
    result. Handler exceptions propagate unchanged.
    """
    program = force(program)
    while isinstance(program, Perform):
        program = resume(program.continuation, handler(program.effect))
    return program.value


def translate(handler: Callable[[Any], EffectProgram], program: EffectProgram) -> EffectProgram:
    """Fold ``handler`` over ``program`` into another effect program.

    ``handler`` maps each source effect to a target program. The result is
    built incrementally: a source continuation is translated only once the
    target program has produced the value it needs.
    """
    program = force(program)
    while isinstance(program, Perform):
        target = force(handler(program.effect))
        k = program.continuation
        if isinstance(target, Return):
            program = resume(k, target.value)
            continue
        return bind(target, lambda r, k=k: translate(handler, resume(k, r)))
    return program
