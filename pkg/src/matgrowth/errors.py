"""Exception hierarchy. CLI exit codes hang off these classes."""


class MatGrowthError(Exception):
    exit_code = 3


class InputError(MatGrowthError, ValueError):
    """Malformed user input or a violated precondition."""

    exit_code = 1


class ParseError(InputError):
    def __init__(self, message, text=None, position=None):
        if position is not None:
            message = f"{message} (at position {position} in {text!r})"
        super().__init__(message)
        self.text = text
        self.position = position


class DomainError(InputError):
    pass


class ResourceCapError(MatGrowthError):
    """A search depth, memory budget or size cap would be exceeded."""

    exit_code = 2


class SingularInputError(MatGrowthError, ArithmeticError):
    exit_code = 1


class NonFiniteError(MatGrowthError, ArithmeticError):
    exit_code = 3


class InvariantViolation(MatGrowthError, AssertionError):
    exit_code = 3
