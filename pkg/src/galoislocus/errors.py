"""Shared exception types."""


class GaloisLocusError(Exception):
    """Base class for all library errors."""


class FieldTooSmallError(GaloisLocusError):
    """A requested element (root of unity, splitting set, ...) does not exist
    in the working field.  ``suggestion`` names a field that would suffice."""

    def __init__(self, message, suggestion=None):
        super().__init__(message)
        self.suggestion = suggestion


class ParseError(GaloisLocusError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class MultiplicityRangeError(GaloisLocusError):
    """Criterion invoked at a point of multiplicity outside {0, 1}."""


class StrangeCenterError(GaloisLocusError):
    """The projection center sits on every tangent space, so the projection
    is not generically finite and separable."""


class BudgetExceededError(GaloisLocusError):
    """An enumeration would exceed the configured point budget."""


class InconsistencyError(GaloisLocusError):
    """Two independently computed answers disagree.  Either a library bug or
    an input violating a documented hypothesis."""


class PreconditionError(GaloisLocusError):
    """An operation was called outside its documented domain."""
