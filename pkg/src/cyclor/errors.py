"""Exception hierarchy shared by every cyclor module."""

from __future__ import annotations


class CyclorError(Exception):
    """Base class for all library errors."""


class RingMismatch(CyclorError, ValueError):
    """Operands live in different rings (or modules)."""


class PrecisionExhausted(CyclorError, ArithmeticError):
    """A series operation would leave no known coefficients."""


class DivisionByZero(CyclorError, ZeroDivisionError):
    pass


class NotDivisible(CyclorError, ArithmeticError):
    """The quotient does not exist in the carrier ring."""


class ExpressionError(CyclorError, ValueError):
    """Base class for expression-parsing failures; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, text: str, position: int, expected: tuple[str, ...]):
        self.text = text
        self.expected = tuple(expected)
        got = text[position:position + 8] or "end of input"
        super().__init__(
            f"unexpected {got!r}, expected one of: {', '.join(self.expected)}",
            position,
        )


class UnknownVariable(ExpressionError):
    def __init__(self, name: str, position: int | None = None):
        self.name = name
        super().__init__(f"unknown variable {name!r}", position)


class DivisionNotAllowed(ExpressionError):
    pass


class NotIdempotent(CyclorError, ValueError):
    pass


class SingularPairing(CyclorError, ValueError):
    pass


class ConditionViolated(CyclorError):
    """A sufficient condition of a construction failed; ``witness`` says where."""

    def __init__(self, message: str, witness: dict | None = None, result=None):
        self.witness = witness
        self.result = result
        super().__init__(message)


class ZeroFieldError(CyclorError, ValueError):
    pass


class NotUnivariate(CyclorError, ValueError):
    pass


class ConfigError(CyclorError, ValueError):
    pass


class SchemaError(CyclorError, ValueError):
    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class SpecExpressionError(CyclorError, ValueError):
    """An expression inside a job file failed to parse."""

    def __init__(self, file: str, key: str, error: ExpressionError):
        self.file = file
        self.key = key
        self.position = error.position
        self.error = error
        super().__init__(f"{file}: {key}: {error}")


ZeroY = ZeroFieldError
