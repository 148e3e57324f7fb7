"""Exception hierarchy and warning categories shared across the package."""

from __future__ import annotations


class SpandistError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(SpandistError, ValueError):
    """Operands live in ambient spaces of different dimension."""


class FieldMismatchError(SpandistError, ValueError):
    """Real/complex scalar fields of the operands are incompatible."""


class InstanceFormatError(SpandistError, ValueError):
    """A problem-instance file is malformed (bad shape, field, or value)."""


class PreconditionError(SpandistError):
    """A mathematical precondition of the requested operation fails.

    Subclasses identify which hypothesis broke; the CLI maps this family to
    its own exit code so callers can tell "your data violates a hypothesis"
    apart from "your input could not be parsed".
    """


class LinearDependenceError(PreconditionError):
    """The vector system is linearly dependent where independence is required."""


class OrthogonalComplementError(PreconditionError):
    """The reference vector is orthogonal to the whole system."""


class NotOrthonormalError(PreconditionError):
    """The vector system is not orthonormal where orthonormality is required."""


class ConditionNotSatisfiedError(PreconditionError):
    """The two-sided coefficient condition required by a bound does not hold."""


class NumericalInstabilityError(PreconditionError):
    """Floating-point evidence contradicts a structural guarantee.

    Raised e.g. when a pivoted factorization of a Gram matrix meets a
    significantly negative pivot, which a true Gram matrix cannot produce.
    """


class NumericalWarning(UserWarning):
    """Result was computed but carries measurable floating-point damage."""
