"""Exception types shared across the package.

The CLI maps these onto its exit-code contract, so new error conditions
should subclass one of the four category bases below rather than raising
bare ValueError.
"""


class GqdError(Exception):
    """Base class for all package errors."""


class ValidationError(GqdError):
    """A matrix or parameter failed a physical-validity check (exit code 2)."""


class DimensionError(GqdError):
    """Operands have unsupported or mismatched dimensions (exit code 3)."""


class NonHermitian(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class NonSquare(ValidationError):
    pass


class NoConvergence(GqdError):
    """Iterative eigen/optimization routine exhausted its iteration cap."""


class DimensionTooSmall(DimensionError):
    pass


class WrongDimension(DimensionError):
    pass


class UnequalDims(DimensionError):
    pass


class VariantUnavailable(DimensionError):
    pass


class NormViolation(ValidationError):
    pass


class UnknownFamily(GqdError):
    """Requested catalog family does not exist (exit code 5)."""


class ParamOutOfRange(ValidationError):
    pass


class BadRank(ValidationError):
    pass


class O4Violated(GqdError):
    """Shield quadruple violates the trace-norm balance condition (exit code 4)."""


class NegativeWeight(ValidationError):
    pass


class NotClassical(ValidationError):
    pass


class InternalInconsistency(GqdError):
    """A quantity violated an internal invariant beyond numerical tolerance."""
