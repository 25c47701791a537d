"""
Error hierarchy for quintessa.

Library functions raise these; the CLI maps them to exit codes.
"""

from typing import List, Optional, Tuple


class QuintessaError(Exception):
    """Base class for every error raised by quintessa."""


class InvalidArgument(QuintessaError, ValueError):
    """An input violates an operation's precondition."""


class DegenerateRadicand(InvalidArgument):
    """The radicand is a perfect fifth power, so Q(5th root of m) is Q itself."""


class NotCoprime(QuintessaError, ArithmeticError):
    """The prime divides the element whose residue symbol was requested."""


class Unsupported(QuintessaError):
    """The request needs ramified or lambda-adic machinery that is not implemented."""


class FixtureError(QuintessaError):
    """A fixture file is missing or violates the schema."""

    def __init__(self, message: str, issues: Optional[List[Tuple[int, str]]] = None):
        self.issues = issues or []
        if self.issues:
            details = "; ".join(f"line {line}: {text}" for line, text in self.issues)
            message = f"{message} ({details})"
        super().__init__(message)


class OracleUnavailable(QuintessaError):
    """The oracle is not configured, failed to start, died or timed out."""


class OracleProtocolError(QuintessaError):
    """The oracle answered with something that is not a protocol line."""

    def __init__(self, message: str, raw: str = ""):
        self.raw = raw
        super().__init__(f"{message}: {raw!r}")
