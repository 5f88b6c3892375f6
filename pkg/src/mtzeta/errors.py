"""Exception and warning types shared across the package."""


class MTZetaError(Exception):
    """Base class for all package errors."""


class DomainError(MTZetaError, ValueError):
    """Arguments lie outside the region where an operation is defined."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole."""


class BudgetExceededError(MTZetaError):
    """A series hit its term cap before its tail bound closed."""


class QuadratureError(MTZetaError):
    """Numerical integration failed to reach the requested tolerance."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})


class IllConditionedFitError(MTZetaError):
    """A least-squares Laurent fit had condition number above the limit."""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class DispatchError(MTZetaError, ValueError):
    """Arguments do not satisfy the hypotheses of the requested case."""


class UnknownIdentityError(MTZetaError, KeyError):
    """Identity name is not in the registry."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown identity"


class AccuracyWarning(UserWarning):
    """An evaluator could not certify its error estimate against the target."""
