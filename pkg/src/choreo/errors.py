from __future__ import annotations


class ChoreoError(Exception):
    """Base class for every error raised by this package."""


class OwnershipError(ChoreoError):
    """A location tried to read a located value it does not own.

    Never a recoverable protocol state: seeing one means either a bug in the
    library or a choreography that bypassed the public API.
    """

    def __init__(self, accessor: str, owner: str | None, operation: str) -> None:
        self.accessor = accessor
        self.owner = owner
        self.operation = operation
        owned = f"owned by `{owner}`" if owner is not None else "owner unknown"
        super().__init__(
            f"location `{accessor}` attempted to read a value it does not own "
            f"({owned}; during {operation})"
        )


class ConfigurationError(ChoreoError, ValueError):
    pass


class CodecError(ChoreoError, ValueError):
    pass


class TransportError(ChoreoError):
    pass


class EndpointFailure(ChoreoError):
    """One location's projected program aborted."""

    def __init__(self, location: str, cause: BaseException) -> None:
        self.location = location
        self.cause = cause
        super().__init__(f"location `{location}` failed: {cause!r}")
