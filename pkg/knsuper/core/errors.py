"""
Exception hierarchy shared by the library and the command line.

Every error raised on purpose derives from ``KNError``. The intermediate
classes carry the exit code used by the CLI.
"""
from typing import Iterable, Optional


class KNError(Exception):
    exit_code = 3


class DomainError(KNError):
    exit_code = 3


class ConfigError(KNError):
    exit_code = 3


class VerificationError(KNError):
    exit_code = 1


class DivisionByZero(KNError, ZeroDivisionError):
    exit_code = 3


class PoleAtSpecialization(DomainError):
    pass


class StrayPole(DomainError):
    pass


class IncompatibleConfig(DomainError):
    pass


class InvalidFamilyForConfig(DomainError):
    pass


class ParityMismatch(DomainError):
    pass


class WeightMismatch(DomainError):
    pass


class NonHomogeneousInput(DomainError):
    pass


class UnknownGenerator(DomainError):
    pass


class NotFiniteDimensional(DomainError):
    pass


class ResidualNonzero(DomainError):
    pass


class ExprTypeError(DomainError):
    """Ill-typed expression (wrong weights or argument kinds for a call)."""


class TableMismatch(VerificationError):
    pass


class UnderdeterminedInterior(VerificationError):
    pass


class ParseError(KNError):
    exit_code = 2

    def __init__(self, message: str, offset: int, expected: Optional[Iterable[str]] = None):
        self.message = message
        self.offset = offset
        self.expected = tuple(sorted(expected or ()))
        detail = f"{message} at byte {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)
