"""Exception hierarchy shared by the library and the CLI.

Every class maps to a CLI exit code through ``exit_code``.
"""

from __future__ import annotations


class ArtifactError(Exception):
    exit_code = 4


class ParseError(ArtifactError, ValueError):
    """Malformed user input (splitting specs, rationals, subsets)."""

    exit_code = 2


class SplittingMismatchError(ArtifactError, ValueError):
    """Two values bound to different splittings were combined."""

    exit_code = 2


class DomainError(ArtifactError, ValueError):
    """A precondition on the mathematical input does not hold."""

    exit_code = 3


class GuardError(DomainError):
    """An enumeration would exceed its configured size guard."""


class TooSingularError(DomainError):
    """A valuation vector is too singular at some prime.

    ``prime`` is the offending prime index; ``low`` is an embedding with
    lambda <= p and ``high`` one with lambda >= p (they coincide when
    lambda = p exactly).
    """

    def __init__(self, message: str, prime: int, low: tuple[int, int], high: tuple[int, int]):
        super().__init__(message)
        self.prime = prime
        self.low = low
        self.high = high


class InvariantViolation(ArtifactError, AssertionError):
    """An internal identity failed; this is a bug, not a user error."""

    exit_code = 4
