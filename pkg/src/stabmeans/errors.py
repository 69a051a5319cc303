"""Exception hierarchy shared by all stabmeans modules."""


class MeansError(Exception):
    """Base class for domain errors raised by this package."""


class MissingVariable(MeansError, KeyError):
    pass


class InexactDivision(MeansError, ArithmeticError):
    pass


class SymbolicCoefficient(MeansError, TypeError):
    """A numeric value was required but a genuinely symbolic polynomial was found."""


class ZeroLeadingCoefficient(MeansError, ZeroDivisionError):
    pass


class UnsupportedExponent(MeansError, ValueError):
    pass


class NotNormalized(MeansError, ValueError):
    """A mean coefficient sequence does not start with 1."""


class IndexOutOfRange(MeansError, IndexError):
    pass


class InsufficientOrder(MeansError, ValueError):
    pass


class DomainError(MeansError, ValueError):
    pass


class UnsupportedLimitCase(MeansError, NotImplementedError):
    pass


class DegreeBoundExceeded(MeansError, RuntimeError):
    pass


class IllConditioned(MeansError, ArithmeticError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SymbolicUndecidable(MeansError, ValueError):
    pass


class OrderTooLow(MeansError, ValueError):
    pass


class NonConvergence(MeansError, ArithmeticError):
    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap


class SpecSyntaxError(MeansError, ValueError):
    pass
