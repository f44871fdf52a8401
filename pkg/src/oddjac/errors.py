"""Exception types shared across the package."""


class OddJacError(Exception):
    """Base class for all package errors."""


class DomainError(OddJacError, ValueError):
    """An input violates an operation's preconditions (user-facing, exit 2)."""


class FieldMismatchError(DomainError):
    """Operands live over different coefficient fields."""


class ParseError(DomainError):
    """Malformed polynomial text."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class FormulaError(OddJacError, ArithmeticError):
    """An internal consistency check failed (non-integer genus, bad symbol value...)."""
