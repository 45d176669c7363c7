"""Errors raised by the clinical rules functions."""


class RulesError(Exception):
    """Base class for rule evaluation errors."""


class DomainError(RulesError):
    """An input value is outside the function's domain (e.g. non-positive weight)."""


class UnsortedInput(RulesError):
    """A date-ordered sequence was not strictly increasing."""


class ReferenceMiss(RulesError):
    """No reference-table row covers the lookup key."""


class InvalidWindow(RulesError):
    """A date window has start after end."""
