"""Exception types shared across the package."""


class PressureForgeError(Exception):
    """Base class for all package-specific errors."""


class DomainError(PressureForgeError):
    """An evaluation point lies outside the function's domain."""


class NotASubgradient(PressureForgeError):
    """A slope failed the global-underestimator test at the requested point."""


class EmptySample(PressureForgeError):
    """A support-point sample was empty where at least one point is required."""


class PrecisionExhausted(PressureForgeError):
    """An extended-precision iterate landed inside the guard band around an
    integer boundary; the digit cannot be resolved reliably."""


class BudgetExceeded(PressureForgeError):
    """An enumeration exceeded its configured node budget."""


class NotInZ(PressureForgeError):
    """A word is not in the language of any subshift of the configured family."""


class EmptyInput(PressureForgeError):
    """An aggregate operation received no records."""


class ConfigError(PressureForgeError):
    """A run configuration failed validation.

    ``field`` names the offending entry (dotted path) so the CLI can emit a
    line-and-field diagnostic.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message
