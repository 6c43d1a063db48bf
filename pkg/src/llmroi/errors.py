"""Exception and warning types shared across the package.

Two failure families matter to callers: invalid input (``ValidationError``,
CLI exit code 1, HTTP 400) and a well-formed request the engine cannot
satisfy (``EngineError`` and subclasses, CLI exit code 2, HTTP 422).
"""

from __future__ import annotations


class ValidationError(ValueError):
    """Input violates a documented domain constraint.

    ``field`` carries a dotted path to the offending field when known
    (e.g. ``scenarios[0].p_success``), ``value`` the rejected value.
    """

    def __init__(self, message: str, *, field: str | None = None, value=None):
        super().__init__(message)
        self.field = field
        self.value = value


class EngineError(RuntimeError):
    """A computation failed for a structural reason, not bad syntax."""


class ZeroCostError(EngineError):
    """Return on investment requested for a scenario with zero total cost."""


class NoSolutionError(EngineError):
    """A break-even solve has a degenerate coefficient on its unknown."""


class OutOfDomainError(EngineError):
    """A break-even root exists but lies outside the variable's domain.

    ``root`` carries the raw root so callers can still inspect it.
    """

    def __init__(self, message: str, *, root: float):
        super().__init__(message)
        self.root = root


class SingularModelError(EngineError):
    """Evaluation at a point where the model is singular (zero cost in a ratio)."""


class DegenerateModelError(EngineError):
    """Sensitivity analysis of a model with zero output variance."""


class NonFiniteOutputError(EngineError):
    """A model produced a non-finite value during sampling.

    ``row`` carries the offending input row.
    """

    def __init__(self, message: str, *, row=None):
        super().__init__(message)
        self.row = row


class AssumptionWarning(UserWarning):
    """A modelling assumption is violated but computation proceeds."""
