"""Exception hierarchy; each class carries the process exit code main.py reports."""
from typing import Optional

from ospq.schemas import ErrorRecord


class OspqError(Exception):
    exit_code = 1

    def __init__(self, message: str, details: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_record(self) -> ErrorRecord:
        return ErrorRecord(
            error=self.message,
            kind=type(self).__name__,
            code=self.exit_code,
            details=self.details,
        )


class ParseError(OspqError):
    """Malformed input text; line/column are 1-based when known."""
    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None,
                 details: Optional[str] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column or 1})"
        super().__init__(message, details)


class SemanticError(OspqError):
    exit_code = 3


class ConfigError(OspqError):
    exit_code = 3


class UnsupportedRegime(OspqError):
    exit_code = 4


class EigenvalueCollision(UnsupportedRegime):
    pass


class IdentityCheckError(OspqError):
    exit_code = 5


class ZeroDenominator(IdentityCheckError, ZeroDivisionError):
    pass


OBSTRUCTION_MESSAGE = (
    "N = {N} is divisible by 4: the quotient algebra at this root of unity is not "
    "pseudo-modular (the involution mu -> sigma(mu) pairs the alcove into weights whose "
    "ribbon eigenvalues differ by sign), so no invariant is defined"
)
