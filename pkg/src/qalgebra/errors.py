"""Exception taxonomy shared by every module.

Partial operations raise a :class:`DomainViolation` subclass instead of
returning NaN or infinity.  The class name is the violation tag, which is what
the CLI prints in diagnostics and in the ``status`` column of tables.
"""


class DomainViolation(ArithmeticError):
    """An operation was evaluated outside its domain.

    ``span`` is filled in by the expression evaluator with the ``(start, end)``
    character offsets of the subexpression that failed.
    """

    def __init__(self, message="", span=None):
        super().__init__(message)
        self.span = span

    @property
    def tag(self):
        return type(self).__name__


class NonPositiveBracket(DomainViolation):
    """``1 + a*x <= 0`` where a deformed exponential or logarithm needs it positive."""


class NonPositiveArgument(DomainViolation):
    """A strictly positive argument was required."""


class NonPositiveBase(DomainViolation):
    """The base of a ``(...)**(1/a)`` power form is not positive."""


class SingularDenominator(DomainViolation):
    """Division by ``1 + a*y == 0`` (or by zero in classical division)."""


class Overflow(DomainViolation):
    """The result leaves the finite floating point range."""


class UndefinedPower(DomainViolation):
    """``0**q`` with ``q <= 0``."""


class InvalidDistribution(ValueError):
    pass


class UnknownLaw(KeyError):
    pass


class ExprError(Exception):
    """Base class for expression-language errors that carry a source span."""

    def __init__(self, message, span):
        super().__init__(message)
        self.span = span

    @property
    def offset(self):
        return self.span[0]


class LexError(ExprError):
    pass


class ParseError(ExprError):
    pass


class UnboundVariable(ExprError):
    pass
