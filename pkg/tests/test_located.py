import pytest
from hypothesis import given
from hypothesis import strategies as st

from choreo import Absent, OwnershipError, Present, Unwrap, locally, run_choreo, unwrap, view_at, wrap
from choreo.located import _grant


def test_wrap():
    assert wrap(5, "buyer") == Present(5, "buyer")
    assert wrap((), "l") == Present((), "l")


def test_unwrap_round_trip():
    assert unwrap(_grant("buyer"), wrap(5, "buyer")) == 5
    assert _grant("seller")(Present("TAPL", "seller")) == "TAPL"


def test_unwrap_absent_is_fatal():
    with pytest.raises(OwnershipError, match="location `buyer` attempted to read a value it does not own"):
        unwrap(_grant("buyer"), Absent())


def test_unwrap_wrong_owner_names_both_locations():
    with pytest.raises(OwnershipError) as info:
        unwrap(_grant("buyer"), Present(3, "seller"))
    err = info.value
    assert (err.accessor, err.owner) == ("buyer", "seller")
    assert "seller" in str(err) and "unwrap" in str(err)


def test_unwrap_not_a_located_value():
    with pytest.raises(TypeError):
        _grant("a")(3)


def test_capabilities_are_not_user_constructible():
    with pytest.raises(TypeError):
        Unwrap("buyer")


def test_capability_dies_with_its_local_computation():
    leaked = []
    x = run_choreo(locally("a", lambda un, ctx: leaked.append(un) or 1))
    assert x == Present(1, "a")
    with pytest.raises(OwnershipError, match="after its local computation returned"):
        leaked[0](x)


def test_view_at():
    v = (Present(1, "a"), [Present(2, "b")], {"k": Present(3, "a")}, 7)
    assert view_at(v, "a") == (Present(1, "a"), [Absent("b")], {"k": Present(3, "a")}, 7)
    assert view_at(v, "b") == (Absent("a"), [Present(2, "b")], {"k": Absent("a")}, 7)


values = st.recursive(st.none() | st.booleans() | st.integers() | st.text(), lambda c: st.lists(c) | st.tuples(c, c), max_leaves=8)


@given(values, st.text(min_size=1))
def test_wrap_unwrap_identity(x, loc):
    assert unwrap(_grant(loc), wrap(x, loc)) is x
