"""Exception hierarchy shared by every module."""


class FilippovError(Exception):
    """Base class for library errors."""


class PreconditionError(FilippovError, ValueError):
    """An operation was called on arguments outside its contract."""


class UnsupportedError(FilippovError):
    """The request is well-formed but cannot be served (field too small, budget exceeded)."""


class VerificationError(FilippovError):
    """A postcondition that the mathematics guarantees did not hold."""


class DescentError(VerificationError):
    """Minimal-Engel descent found a violating generator but no descending scalar."""

    def __init__(self, message, scan=None):
        super().__init__(message)
        self.scan = scan or []
