"""Errors raised by diary operations."""


class DiaryError(Exception):
    """Base class for diary domain errors."""


class UnknownPatient(DiaryError):
    pass


class UnknownDoctor(DiaryError):
    pass


class UnknownRecord(DiaryError):
    pass


class FutureDate(DiaryError):
    pass


class NotLinked(DiaryError):
    """The acting doctor is not the patient's current doctor."""


class ValidationFailure(DiaryError):
    """A record field violates a domain invariant."""
