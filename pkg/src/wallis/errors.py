"""Exception hierarchy.

Every failure that the command line maps to an exit code derives from
:class:`WallisError`; the ``exit_code`` attribute carries that mapping.
"""


class WallisError(Exception):
    exit_code = 1


class SpecParseError(WallisError):
    """Malformed spec file or closed-form text."""

    exit_code = 1

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class DomainError(WallisError, ValueError):
    """An interval touches a singularity or leaves a function's domain."""

    exit_code = 2


class ConstraintViolation(WallisError):
    """Power-sum (moment) constraints fail; the product diverges or is invalid."""

    exit_code = 2


class IncompatibleSpecs(WallisError):
    exit_code = 2


class InvalidTarget(WallisError):
    exit_code = 2


class InvalidTransform(WallisError):
    exit_code = 2


class ToleranceNotMet(WallisError):
    """The certified radius exceeds the requested absolute tolerance."""

    exit_code = 3


class IrreducibleClosedForm(WallisError):
    """Multiple-gamma atoms remain that cannot be evaluated numerically."""

    exit_code = 2


class IdentityFalsified(WallisError):
    """Two certified enclosures of the same quantity are disjoint."""

    exit_code = 4


class InvalidSpec(WallisError):
    """A product spec breaks the positivity or integer-exponent invariants."""

    exit_code = 1
