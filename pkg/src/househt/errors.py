class HouseHTError(Exception):
    pass


class ContractViolation(HouseHTError, ValueError):
    """Raised when a caller breaks an operation's preconditions."""


class NumericalFailure(HouseHTError, ArithmeticError):
    """Raised when an internal residual guard fires."""


class SingularSystemError(HouseHTError, ArithmeticError):
    """Raised by a solve that meets an exactly zero pivot."""


class ParseError(HouseHTError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnsupportedFormatError(HouseHTError, ValueError):
    pass
