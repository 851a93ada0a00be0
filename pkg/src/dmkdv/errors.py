"""Exception types shared across the package.

Every failure mode that callers are expected to catch has its own class;
generic ValueError/TypeError are reserved for plain misuse (bad argument
types, malformed construction).
"""


class DmkdvError(Exception):
    """Base class for all package-specific errors."""


class SpillError(DmkdvError):
    """Boundary sites of the integration window picked up non-negligible
    amplitude: the window is too small for the requested final time."""


class BlowupError(DmkdvError):
    """sup|q| reached 1 (or exceeded the conserved bound) during time
    stepping; the step size is too large or the input state is invalid."""


class DomainError(DmkdvError):
    """Argument outside the mathematical domain of the operation
    (off the unit circle, at z = 0, on an integration arc, ...)."""


class SingularStepError(DmkdvError):
    """A one-step transfer matrix was singular; cannot happen for
    admissible data with sup|q| < 1."""


class ReflectionTooLargeError(DmkdvError):
    """|r(z)| reached 1; the defocusing assumption |r| < 1 is violated."""


class MergingPointsError(DmkdvError):
    """Ray too close to |n/t| = 2: the stationary points coalesce and the
    four-point asymptotics does not apply."""


class QuadratureError(DmkdvError):
    """Adaptive quadrature failed to meet its tolerance within the
    subdivision budget."""


class PoleError(DmkdvError):
    """Gamma function evaluated at a nonpositive integer."""


class ConventionError(DmkdvError):
    """The imaginary residual of the asymptotic sum is far above the
    expected error scale; signals a branch or sign inconsistency."""


class ConfigError(DmkdvError):
    """Invalid run configuration."""
