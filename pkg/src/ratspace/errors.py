"""Exception hierarchy for ratspace."""


class RatspaceError(Exception):
    """Base class for all errors raised by this package."""


class ZeroDenominator(RatspaceError, ZeroDivisionError):
    pass


class MixedFields(RatspaceError, TypeError):
    pass


class NotPrime(RatspaceError, ValueError):
    pass


class ZeroElement(RatspaceError, ValueError):
    """Valuation of the zero function was requested."""


class NonSplitPlace(RatspaceError):
    """A polynomial carries an irreducible factor of degree > 1 over the base field.

    Raised whenever a place that is not rational over K would be needed, since
    merging conjugate places would silently corrupt divisor degrees.
    """

    def __init__(self, factor, message=None):
        self.factor = factor
        super().__init__(message or f"non-split factor over base field: {factor}")


class ConstantElement(RatspaceError, ValueError):
    pass


class AllConstant(RatspaceError, ValueError):
    pass


class SpanMismatch(RatspaceError, ValueError):
    pass


class HypothesisNotMet(RatspaceError):
    pass


class InternalInvariantViolation(RatspaceError, AssertionError):
    """A proven statement failed on an instance: signals an arithmetic bug."""


class SmallFieldExhausted(RatspaceError):
    pass


class FieldTooSmall(RatspaceError):
    pass


class DegreeRealizationFailed(RatspaceError, ValueError):
    pass


class DimensionTooLarge(RatspaceError, ValueError):
    pass


class ParseError(RatspaceError, SyntaxError):
    """Syntax error carrying a 1-based line and column."""

    def __init__(self, message, line=1, column=1, text=None):
        super().__init__(f"{message} (line {line}, column {column})")
        self.msg = message
        self.lineno = line
        self.offset = column
        self.text = text

    def __str__(self):
        return f"{self.msg} (line {self.lineno}, column {self.offset})"
