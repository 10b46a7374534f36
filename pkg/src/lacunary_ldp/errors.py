"""Exception hierarchy shared by all modules.

Each class carries the CLI exit code it maps to, so the command-line layer can
translate failures without a lookup table.
"""


class LDPError(Exception):
    """Base class for all library errors."""

    exit_code = 1
    kind = "error"


class InvalidArgument(LDPError, ValueError):
    exit_code = 2
    kind = "invalid-argument"


class ResourceLimitError(LDPError):
    """A configured work bound would be exceeded."""

    exit_code = 3
    kind = "resource-limit"

    def __init__(self, message, bound=None, required=None):
        super().__init__(message)
        self.bound = bound
        self.required = required


class InternalConsistencyError(LDPError):
    """Two independent computations that must agree did not."""

    exit_code = 4
    kind = "internal-consistency"


class InvariantViolation(InternalConsistencyError):
    kind = "invariant-violation"


class NumericError(LDPError, ArithmeticError):
    kind = "numeric"


class RangeError(NumericError):
    kind = "range"


class ConvergenceError(NumericError):
    kind = "convergence"

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class AccuracyError(NumericError):
    """Grid doubling check still disagrees after escalation."""

    kind = "accuracy"

    def __init__(self, message, values=()):
        super().__init__(message)
        self.values = tuple(values)
