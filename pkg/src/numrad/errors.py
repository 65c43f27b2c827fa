"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class NotHermitian(ToolkitError):
    """Input was required to be Hermitian within tolerance but is not."""


class NotPositive(ToolkitError):
    """Input was required to be positive semidefinite within tolerance but is not."""


class DomainError(ToolkitError):
    """A scalar parameter lies outside its admissible range."""


class DimensionMismatch(ToolkitError):
    """Operand dimensions are inconsistent."""


class BadSpec(ToolkitError):
    """A sample specification is invalid."""


class UnknownEntry(ToolkitError):
    """Requested check id does not exist in the catalog."""


class OperandMismatch(ToolkitError):
    """Operands do not match the operand signature of a catalog entry."""


class ConfigError(ToolkitError):
    """A campaign configuration is invalid."""


class ParseError(ToolkitError):
    """A matrix or config file could not be parsed."""
