"""Exception types shared across the package."""


class PointBoxError(Exception):
    """Base class for all errors raised by pointbox."""


class ConstraintViolation(PointBoxError):
    """Interface parameters do not satisfy alpha*gamma - beta*delta = 1."""


class DegenerateDelta(PointBoxError):
    """delta is indefinite because beta = 0 on the fixed-gamma slice."""


class SingularPoint(PointBoxError):
    """Requested parameters sit exactly on the singular point of the slice."""


class InvalidGamma0(PointBoxError):
    """The slice parameter gamma0 must be nonzero."""


class PathThroughSingularity(PointBoxError):
    """A parameter path touches or passes through the singular point."""


class FloorTooHigh(PointBoxError):
    """A bound state exists below the requested energy floor."""


class NoConvergence(PointBoxError):
    """Root search or refinement failed to converge."""


class NotAnEigenvalue(PointBoxError):
    """Amplitude construction was attempted at an energy that is not a root."""


class OutOfDomain(PointBoxError):
    """A sample position lies outside the box."""


class UnrepresentableParams(PointBoxError):
    """The triple-delta strength schedule is undefined (beta = 0 or delta = 0)."""


class StepUnderflow(PointBoxError):
    """Adaptive path stepping hit the minimum step without resolving a match."""


class SpectraMismatch(PointBoxError):
    """Start and end spectra of a closed loop disagree, or tracking is inconsistent."""


class DomainMismatch(PointBoxError):
    """Two wavefunctions live on different boxes."""


class GaugeAmbiguity(PointBoxError):
    """Sign alignment of neighbouring eigenstates is ambiguous (step too large)."""


class TruncationLeak(PointBoxError):
    """The evolution matrix lost norm out of the tracked window of levels."""


class NearPole(PointBoxError):
    """Momentum too close to a pole of the tangent terms of the branch function."""
