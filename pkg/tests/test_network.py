import threading

import pytest

from choreo import ConfigurationError, LocalFabric, Perform, Return, bind, encode, pure, run_network
from choreo.freer import do, force
from choreo.network import BroadcastEff, SendEff, broadcast, recv, run, send


def run_pair(fabric, programs):
    """Run one network program per location in threads; return their results."""
    results, errors = {}, []

    def go(loc, prog):
        try:
            results[loc] = run_network(fabric, loc, prog, trace=fabric.traces[loc])
        except BaseException as exc:
            errors.append(exc)
            fabric.close()

    threads = [threading.Thread(target=go, args=item) for item in programs.items()]
    for t in threads:
        t.start()
    for t in threads:
        t.join(5)
    if errors:
        raise errors[0]
    return results


def test_constructors_unfold_to_one_effect():
    p = send(encode("hi"), "seller")
    assert isinstance(p, Perform) and p.effect == SendEff(b'"hi"', "seller")
    assert p.continuation(None) == Return(None)
    assert broadcast(b"x").effect == BroadcastEff(b"x", True)


def test_single_message():
    fabric = LocalFabric(["a", "b"])
    got = run_pair(fabric, {"a": send(encode(42), "b"), "b": recv("a")})
    assert got == {"a": None, "b": encode(42)}


def test_fifo_per_pair():
    fabric = LocalFabric(["a", "b"], max_delay_ms=20, seed=3)

    @do
    def sender():
        yield send(b"1", "b")
        yield send(b"2", "b")

    @do
    def receiver():
        x = yield recv("a")
        y = yield recv("a")
        return [x, y]

    assert run_pair(fabric, {"a": sender(), "b": receiver()})["b"] == [b"1", b"2"]


def test_broadcast_reaches_every_other_location_once():
    fabric = LocalFabric(["p", "q", "r"])
    run_network(fabric, "p", broadcast(encode(True)))
    assert fabric.pending() == {("p", "q"): 1, ("p", "r"): 1}
    assert len(fabric.mailbox("p", "p")) == 0


def test_run_only_program_is_local():
    fabric = LocalFabric(["a"])
    prog = bind(run(lambda ctx: ctx.location * 2), lambda s: pure(s + "!"))
    assert run_network(fabric, "a", prog) == "aa!"
    assert fabric.is_quiescent()


def test_unknown_locations():
    fabric = LocalFabric(["a", "b"])
    with pytest.raises(ConfigurationError):
        run_network(fabric, "zed", pure(1))
    with pytest.raises(ConfigurationError):
        run_network(fabric, "a", send(b"1", "zed"))


def test_trace_records_both_ends():
    fabric = LocalFabric(["a", "b"])
    run_pair(fabric, {"a": send(b"7", "b"), "b": recv("a")})
    (s,), (r,) = fabric.traces["a"], fabric.traces["b"]
    assert (s.kind, s.peer, s.payload) == ("send", "b", b"7")
    assert (r.kind, r.peer, r.payload) == ("recv", "a", b"7")
