"""Exception hierarchy.

Every error raised on bad *input* derives from :class:`InputError`; the CLI maps
those to exit status 2. Errors describing a mathematically impossible request
(critical level, non-scalar Casimir, ...) derive from :class:`DgvlaError` only.
"""

from __future__ import annotations


class DgvlaError(Exception):
    """Base class for all errors raised by this package."""


class InputError(DgvlaError):
    """Malformed or inconsistent user input."""


class ParseError(InputError):
    pass


class UnknownKey(ParseError):
    pass


class DuplicateId(InputError):
    pass


class UnknownGenerator(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class WeightMismatch(InputError):
    pass


class TruncationViolation(InputError):
    pass


class DifferentialNotSquareZero(InputError):
    pass


class OddGenerator(InputError):
    pass


class InvalidDgLie(InputError):
    pass


class FormInvariantViolation(InputError):
    """An invariant bilinear form fails one of its defining conditions.

    ``condition`` is one of ``"d-invariance"``, ``"graded-symmetry"``,
    ``"invariance"`` or ``"support"``.
    """

    def __init__(self, condition: str, detail: str) -> None:
        super().__init__(f"{condition}: {detail}")
        self.condition = condition


class MissingLevel(InputError):
    pass


class NotInMinusPart(DgvlaError):
    pass


class WeightOverflow(DgvlaError):
    """A result term has weight above the context's cap; raise the cap."""


class WindowExceeded(DgvlaError):
    pass


class NotScalar(DgvlaError):
    pass


class Degenerate(DgvlaError):
    pass


class CriticalLevel(DgvlaError):
    pass
