"""Locations and values pinned to a single location.

A location is just a non-empty string. A located value is either
``Present`` (the owner's view) or ``Absent`` (everyone else's view).
Only an ``Unwrap`` capability for the owning location can read one, and
capabilities are handed out solely by the choreography interpreters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Generic, TypeVar, Union

from .errors import ConfigurationError, OwnershipError

T = TypeVar("T")

Location = str


def check_location(name: Any) -> Location:
    if not isinstance(name, str) or not name:
        raise ConfigurationError(f"location must be a non-empty string, got {name!r}")
    return name


@dataclass(frozen=True)
class Present(Generic[T]):
    value: T
    owner: Location


@dataclass(frozen=True)
class Absent:
    """Placeholder for a value owned elsewhere; it can never be read."""

    owner: Location | None = None


Located = Union[Present, Absent]


def wrap(value: T, owner: Location) -> Present[T]:
    return Present(value, owner)


def owner_of(v: Located) -> Location | None:
    return v.owner


def unwrap(cap: Unwrap, v: Located, operation: str = "unwrap") -> Any:
    return cap.read(v, operation)


_TOKEN = object()


class Unwrap:
    """The right to read values located at one location.

    Call it on a located value to get the plain value back. A capability
    stops working once the local computation it was handed to returns.
    """

    __slots__ = ("location", "_live")

    def __init__(self, location: Location, *, _token: object = None) -> None:
        if _token is not _TOKEN:
            raise TypeError("Unwrap capabilities are created by the interpreter only")
        self.location = location
        self._live = True

    def read(self, v: Located, operation: str = "unwrap") -> Any:
        if not self._live:
            raise OwnershipError(self.location, owner_of(v), f"{operation} after its local computation returned")
        if isinstance(v, Present) and v.owner == self.location:
            return v.value
        if isinstance(v, (Present, Absent)):
            raise OwnershipError(self.location, v.owner, operation)
        raise TypeError(f"expected a located value, got {type(v).__name__}")

    __call__ = read

    def revoke(self) -> None:
        self._live = False

    def __repr__(self) -> str:
        return f"Unwrap({self.location!r})"


def _grant(location: Location) -> Unwrap:
    return Unwrap(location, _token=_TOKEN)


def view_at(value: Any, location: Location) -> Any:
    """What ``location`` would hold of ``value`` after a distributed run.

    Located values owned elsewhere become ``Absent``; containers are mapped
    recursively. Used to compare direct-run results with projected ones.
    """
    if isinstance(value, Present):
        return value if value.owner == location else Absent(value.owner)
    if isinstance(value, tuple):
        return tuple(view_at(x, location) for x in value)
    if isinstance(value, list):
        return [view_at(x, location) for x in value]
    if isinstance(value, dict):
        return {k: view_at(x, location) for k, x in value.items()}
    return value
