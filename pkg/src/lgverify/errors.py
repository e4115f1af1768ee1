"""Exception types shared across the package."""

from __future__ import annotations


class LGError(Exception):
    """Base class for all errors raised by lgverify."""


class InputError(LGError):
    """Bad user input; the CLI maps these to exit code 2."""


class ParseError(InputError):
    pass


class GcdViolation(InputError):
    pass


class EmptyWeights(InputError):
    pass


class InvalidParameter(InputError):
    pass


class UnsupportedFamily(InputError):
    pass


class NotGeneralType(InputError):
    pass


class NotNarrow(InputError):
    pass


class OrderMismatch(LGError):
    pass


class DivisionByZero(LGError, ZeroDivisionError):
    pass


class NonPositiveArgument(LGError, ValueError):
    pass


class FlavorMismatch(LGError, TypeError):
    pass


class UnsupportedBroad(LGError):
    pass


class NonIntegerResult(LGError):
    pass


class CancellationFailure(LGError):
    def __init__(self, message: str, offending=None):
        super().__init__(message)
        self.offending = offending


class PrecisionBudgetExceeded(LGError):
    pass


class PoleInPrefactor(LGError):
    pass


class NonConvergence(LGError):
    pass


class RelationViolated(LGError):
    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual
