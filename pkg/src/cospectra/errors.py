"""Exception hierarchy. Each class maps to a CLI exit code."""


class CospectraError(Exception):
    exit_code = 1


class ParseError(CospectraError, ValueError):
    """Malformed graph6 or adjacency-matrix text."""

    exit_code = 2


class DomainError(CospectraError, ValueError):
    """An operation was called outside its precondition."""

    exit_code = 2


class ResourceCapError(CospectraError):
    """Enumeration work estimate exceeds the configured cap."""

    exit_code = 3


class InvariantViolation(CospectraError, AssertionError):
    """A proven congruence or a mathematical invariant was falsified.

    Far more likely an implementation bug than a counterexample, but it
    must never be swallowed.
    """

    exit_code = 4
