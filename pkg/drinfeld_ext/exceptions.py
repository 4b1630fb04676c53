"""
Error hierarchy for drinfeld_ext.

The command line maps these onto exit codes (see ``cli.EXIT_CODES``).
"""


class DrinfeldExtError(Exception):
    """Base class for every error raised by the package."""


class ParseError(DrinfeldExtError, ValueError):
    def __init__(self, reason, text="", position=None):
        self.reason = reason
        self.text = text
        self.position = position
        if position is None:
            message = reason
        else:
            message = f"{reason} at position {position}"
        super().__init__(message)


class FieldError(DrinfeldExtError, ArithmeticError):
    """Bad field parameters or an impossible operation in F_q or K."""


class DimensionError(DrinfeldExtError, ValueError):
    pass


class NotATModuleError(DrinfeldExtError, ValueError):
    """A presentation violates the t-module invariant."""


class NotAMorphismError(DrinfeldExtError, ValueError):
    pass


class UnsupportedError(DrinfeldExtError):
    """The request is outside what the theory supports.

    The message always carries the mathematical reason.
    """


class VerificationError(DrinfeldExtError, AssertionError):
    """An identity that must hold exactly did not."""


class DegreeGuardError(DrinfeldExtError):
    def __init__(self, degree, limit):
        self.degree = degree
        self.limit = limit
        super().__init__(
            f"theta-degree {degree} exceeds the abort threshold {limit} "
            "(raise it with DRINFELD_EXT_ABORT_DEG)"
        )


class ConfigError(DrinfeldExtError, ValueError):
    """Invalid command-line or environment settings."""
