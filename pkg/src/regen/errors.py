"""Exception types shared across the package."""


class RegenError(Exception):
    """Base class for all errors raised by :mod:`regen`."""


class ConstraintViolation(RegenError, ValueError):
    """An (n, k, d) triple violates the admissible parameter range."""


class PreconditionViolation(RegenError, ValueError):
    """A closed form was asked for outside the parameter shape it holds on."""


class SearchSpaceTooLarge(RegenError):
    """An exhaustive search would exceed its configured ceiling."""


class InvalidHelperSet(RegenError, ValueError):
    """A repair named helpers that are not d distinct active nodes."""


class InfeasibleBeta(RegenError, ValueError):
    """No storage amount reaches the file size at the requested beta."""
