"""Exception hierarchy and the CLI exit codes they map to."""

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


class SumProdError(Exception):
    exit_code = EXIT_INPUT


class DomainError(SumProdError, ValueError):
    """An operation was called outside its mathematical domain (e.g. 0 in a multiplicative set)."""


class DivisorZeroError(DomainError, ZeroDivisionError):
    pass


class DegenerateDilationError(DomainError):
    pass


class ConfigError(SumProdError, ValueError):
    pass


class InputError(SumProdError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvalidWitnessError(SumProdError, ValueError):
    def __init__(self, constraint, message):
        super().__init__(f"{constraint}: {message}")
        self.constraint = constraint


class ResourceLimitError(SumProdError):
    exit_code = EXIT_RESOURCE


class InvariantViolation(SumProdError, AssertionError):
    """A checked inequality failed on concrete data; always an implementation bug."""

    exit_code = EXIT_CHECK_FAILED
