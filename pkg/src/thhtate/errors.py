"""Exception hierarchy shared by every module of the engine."""

from __future__ import annotations


class AlgebraError(ValueError):
    """Base class for validation and computation errors."""


class NonPrime(AlgebraError):
    pass


class DuplicateName(AlgebraError):
    pass


class ParityViolation(AlgebraError):
    pass


class UnboundedBasis(AlgebraError):
    pass


class ForeignGenerator(AlgebraError):
    pass


class NonPolynomialInput(AlgebraError):
    pass


class DegreeBudgetExceeded(AlgebraError):
    pass


class NameClash(AlgebraError):
    pass


class WindowTooSmall(AlgebraError):
    pass


class DisjointWindows(AlgebraError):
    pass


class NonIncreasing(AlgebraError):
    pass
