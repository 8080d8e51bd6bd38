"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CohomologyError(Exception):
    """Base class for all errors raised by nacoh."""


class ValidationError(CohomologyError, ValueError):
    """An input failed a structural check.

    ``witness`` carries the offending elements (a triple, a pair, an index)
    so callers can report exactly where validation failed.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAGroup(ValidationError):
    pass


class NotAHomomorphism(ValidationError):
    pass


class NotNormal(ValidationError):
    pass


class NotAnAction(ValidationError):
    pass


class NotAbelian(ValidationError):
    pass


class NotACocycle(ValidationError):
    pass


class PeifferViolation(ValidationError):
    pass


class EquivarianceViolation(ValidationError):
    pass


class WellDefinednessViolation(ValidationError):
    pass


class NotInjective(ValidationError):
    pass


class NotSurjective(ValidationError):
    pass


class ImageKernelMismatch(ValidationError):
    pass


class NotEquivariant(ValidationError):
    pass


class UnsupportedSize(CohomologyError):
    pass


class ParseError(CohomologyError):
    pass


class EnumerationBudgetExceeded(CohomologyError):
    """Raised when an exhaustive search would visit more states than allowed."""

    def __init__(self, what: str, budget: int, space_size: int):
        super().__init__(
            f"{what}: search space of about {space_size} states exceeds budget {budget}"
        )
        self.what = what
        self.budget = budget
        self.space_size = space_size
