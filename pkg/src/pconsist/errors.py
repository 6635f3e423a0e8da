"""Exception types raised across the package."""


class PConsistError(Exception):
    """Base class for every error raised by pconsist."""


class ParseError(PConsistError, ValueError):
    """Malformed formula, conditional or KB file text."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class UnknownAtomError(PConsistError, KeyError):
    """A formula mentions an atom the truth assignment does not cover."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"atom {self.name!r} is not in the assignment's universe"


class ContractViolation(PConsistError, ValueError):
    """An operation was called with arguments outside its precondition."""


class ImproperModelError(PConsistError, ZeroDivisionError):
    """The antecedent of a conditional has probability zero under a model."""


class BoundExceeded(PConsistError, ValueError):
    """An exponential search was asked to run past its configured size bound."""
