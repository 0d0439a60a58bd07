"""Exception types shared across the package."""

from __future__ import annotations


class GaugeFluxError(Exception):
    """Base class for all gaugeflux errors."""


class EvaluatorError(GaugeFluxError):
    """A field evaluator failed at a specific point."""

    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


class FieldAtObservationError(GaugeFluxError):
    """The field difference is nonzero at the observation point.

    The phase connection only exists when both systems see identical
    fields at the point where the wavefunctions are compared.
    """

    def __init__(self, message: str, point=None, value=None):
        super().__init__(message)
        self.point = point
        self.value = value


class DecompositionUnsupportedError(GaugeFluxError):
    """The gauge-fix function for this field shape / frame does not exist.

    Raised when the independence condition fails under sampling; carries
    the offending coordinate so the caller can see where the bracket
    picks up a forbidden dependence.
    """

    def __init__(self, message: str, coordinate=None, value=None):
        super().__init__(message)
        self.coordinate = coordinate
        self.value = value


class SingularPointError(GaugeFluxError):
    """Evaluation requested at a singular point (e.g. a flux line core)."""


class ToleranceNotMetError(GaugeFluxError):
    """Adaptive quadrature exhausted its depth budget.

    ``best_estimate`` holds the value accumulated so far.
    """

    def __init__(self, message: str, best_estimate: float):
        super().__init__(message)
        self.best_estimate = best_estimate


class GridFormatError(GaugeFluxError):
    """A tabulated-grid file is malformed or does not cover the domain."""


class ScenarioError(GaugeFluxError):
    """A scenario file failed to parse or validate."""
