"""Exception types shared across the package.

Only four kinds of failure are ever raised deliberately:

* ``WordSyntaxError`` -- the input text does not match the word grammar;
  carries the 0-based offset of the offending character.
* ``MalformedArcError`` -- a crossing sequence does not describe a legal
  path in the cut-open surface.
* ``PreconditionError`` -- an operation was called on arguments violating
  its stated precondition (e.g. comparing two arcs with different start
  points).
* ``InvariantViolation`` -- the implementation caught itself producing
  something mathematically impossible (a failed certification, conflicting
  verdicts).  This is never a user error; it signals a bug and maps to
  exit status 2 in the command line driver.
"""


class WordSyntaxError(ValueError):
    """Raised by the word parser; ``position`` is the 0-based text offset."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class MalformedArcError(ValueError):
    """Raised when a crossing sequence is not realizable in the cut disk."""


class PreconditionError(ValueError):
    """Raised when an operation's documented precondition is violated."""


class InvariantViolation(Exception):
    """An internal consistency check failed.

    ``details`` is a free-form dict dumped as the diagnostic payload by the
    command line driver (exit status 2).
    """

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = dict(details)
