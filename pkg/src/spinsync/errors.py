"""Exception types shared across the package."""


class SpinSyncError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(SpinSyncError):
    """Operands have incompatible or unexpected shapes."""


class NotHermitianError(SpinSyncError):
    """A matrix required to be Hermitian is not (beyond tolerance)."""


class NoNullSpaceError(SpinSyncError):
    """No singular value is small enough to identify a null vector."""


class DegenerateNullSpaceError(SpinSyncError):
    """More than one singular value lies below the null-space tolerance."""

    def __init__(self, multiplicity: int):
        super().__init__(f"null space is {multiplicity}-dimensional")
        self.multiplicity = multiplicity


class UnphysicalStateError(SpinSyncError):
    """A density matrix violates Hermiticity, unit trace, or positivity."""


class DegenerateSteadyStateError(SpinSyncError):
    """The generator admits more than one steady state."""

    def __init__(self, multiplicity: int):
        super().__init__(f"steady state is not unique (null dimension {multiplicity})")
        self.multiplicity = multiplicity


class StepUnstableError(SpinSyncError):
    """Fixed-step integration lost trace normalization (step too large)."""


class BadResolutionError(SpinSyncError):
    """Grid resolution violates quadrature requirements."""


class ConfigError(SpinSyncError):
    """Base class for configuration problems."""


class ConfigParseError(ConfigError):
    """A config line is not of the form `key = value`."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UnknownKeyError(ConfigError):
    """A config key is not part of the accepted vocabulary."""

    def __init__(self, line_no: int, key: str):
        super().__init__(f"line {line_no}: unknown key '{key}'")
        self.line_no = line_no
        self.key = key


class InvalidValueError(ConfigError):
    """A config value fails type conversion or a range constraint."""

    def __init__(self, line_no: int, key: str, message: str):
        super().__init__(f"line {line_no}: invalid value for '{key}': {message}")
        self.line_no = line_no
        self.key = key


class UsageError(SpinSyncError):
    """Command line invocation error."""
