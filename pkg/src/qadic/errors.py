"""Exception taxonomy.

Four failure modes, kept deliberately distinct so callers (and the CLI's exit
codes) can tell them apart:

* DomainError      -- the inputs are outside the function's mathematical domain.
* PrecisionError   -- the inputs are fine but carry too few digits to answer.
* ResourceError    -- the answer would exceed a configured budget or cap.
* InvariantError   -- an internal certainty failed; indicates a bug, never bad input.
"""


class QadicError(Exception):
    """Base class for all qadic errors."""


class DomainError(QadicError):
    """Input outside the mathematical domain of the operation."""


class PrecisionError(QadicError):
    """Not enough digits of the input are known to produce the requested output."""


class ResourceError(QadicError):
    """The requested computation exceeds a configured budget or precision cap."""


class InvariantError(QadicError):
    """A structural guarantee failed at runtime.  This is a bug, not a user error."""
