import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from choreo import (
    Absent,
    CodecError,
    ConfigurationError,
    LocalFabric,
    Present,
    comm,
    cond,
    epp,
    locally,
    pure,
    run_all,
    run_choreo,
    run_choreography,
)
from choreo.network import RecvEff, RunEff, SendEff
from helpers import comm_effects, dry_run


def test_sender_projection():
    result, effects = dry_run(epp(comm("s", Present(5, "s"), "r"), "s"), "s")
    assert effects == [SendEff(b"5", "r")]
    assert result == Absent("r")


def test_receiver_projection():
    result, effects = dry_run(epp(comm("s", Present(5, "s"), "r"), "r"), "r", {"s": [b"5"]})
    assert effects == [RecvEff("s")]
    assert result == Present(5, "r")


def test_bystander_projection_is_silent():
    result, effects = dry_run(epp(comm("s", Present(5, "s"), "r"), "x"), "x")
    assert effects == []
    assert result == Absent("r")


def test_self_comm_is_a_local_copy():
    result, effects = dry_run(epp(comm("l", Present(5, "l"), "l"), "l"), "l")
    assert effects == [] and result == Present(5, "l")


def test_cond_non_decider_receives_then_follows_branch():
    c = cond("l", Present(True, "l"), lambda b: comm("m", Present(1, "m"), "l") if b else pure(0))
    result, effects = dry_run(epp(c, "m"), "m", {"l": [b"true"]})
    assert effects == [RecvEff("l", choice=True), SendEff(b"1", "l")]
    assert result == Absent("l")


def test_cond_decider_broadcasts():
    c = cond("l", Present(False, "l"), lambda b: pure("no") if not b else pure("yes"))
    result, effects = dry_run(epp(c, "l"), "l")
    assert [type(e).__name__ for e in effects] == ["BroadcastEff"]
    assert effects[0].payload == b"false" and result == "no"


def test_local_only_runs_at_its_location():
    c = locally("a", lambda un, ctx: ctx.location)
    assert dry_run(epp(c, "a"), "a")[0] == Present("a", "a")
    result, effects = dry_run(epp(c, "b"), "b")
    assert result == Absent("a") and effects == []


def test_pure_projects_to_nothing():
    assert dry_run(epp(pure(7), "a"), "a") == (7, [])


def test_single_location_choreography_sends_nothing():
    fabric = LocalFabric(["solo"])
    assert run_all(fabric, locally("solo", lambda un, ctx: 3)) == {"solo": Present(3, "solo")}
    assert fabric.traces["solo"] == []


def test_unconfigured_location_is_a_configuration_error():
    fabric = LocalFabric(["a", "b"])
    with pytest.raises(ConfigurationError):
        run_choreography(fabric, comm("a", Present(1, "a"), "zed"), "a")
    with pytest.raises(ConfigurationError):
        run_choreography(fabric, pure(1), "zed")
    with pytest.raises(ConfigurationError):
        dry_run(epp(locally("c", lambda un, ctx: 1), "a", known={"a", "b"}), "a")


def test_corrupt_payload_is_a_codec_error():
    with pytest.raises(CodecError):
        dry_run(epp(comm("s", Present(5, "s"), "r"), "r"), "r", {"s": [b"\x00garbage"]})


def test_run_all_pure_everywhere():
    assert run_all(LocalFabric(["a", "b", "c"]), pure(7)) == {"a": 7, "b": 7, "c": 7}


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(0, 3), st.integers(0, 3), st.integers(-50, 50))
def test_comm_conservation(n, i, j, v):
    locs = [f"l{k}" for k in range(n)]
    s, r = locs[i % n], locs[j % n]
    fabric = LocalFabric(locs)
    out = run_all(fabric, comm(s, Present(v, s), r))
    assert out[r] == Present(v, r) == run_choreo(comm(s, Present(v, s), r))
    sends = sum(e.kind == "send" for t in fabric.traces.values() for e in t)
    assert sends == (0 if s == r else 1)
    assert fabric.is_quiescent()


def test_projected_results_match_oracle_per_location():
    c = comm("a", Present(5, "a"), "b")
    out = run_all(LocalFabric(["a", "b", "c"]), c)
    assert out == {"a": Absent("b"), "b": Present(5, "b"), "c": Absent("b")}
    assert comm_effects(dry_run(epp(c, "c"), "c")[1]) == []
